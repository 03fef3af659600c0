"""Text formats for graphs and matchings.

Graph files::

    c comment
    p 2match <n> <m>
    e <u> <v> <w>        (1-based ids, decimal weight with <= 6 fraction digits)

Matching files::

    s <variant> <weight>
    m <u> <v>
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from pathlib import Path

from .graph import EdgeSet, GraphError, Variant, WeightedGraph, set_weight

__all__ = [
    "ParseError",
    "MAX_DECIMALS",
    "parse_weight",
    "format_weight",
    "parse_graph",
    "read_graph",
    "format_graph",
    "MatchingFile",
    "parse_matching",
    "read_matching",
    "format_matching",
]

MAX_DECIMALS = 6
_NUMBER = re.compile(r"^[+-]?(\d+(\.\d*)?|\.\d+)$")


class ParseError(GraphError):
    rule = "format"

    def __init__(self, message: str, line: int | None = None):
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"format: {where}{message}")
        self.line = line


def parse_weight(text: str, line: int | None = None) -> tuple[Fraction, int]:
    """Decimal string to an exact fraction and its number of fraction digits."""
    if not _NUMBER.match(text):
        raise ParseError(f"bad weight {text!r}", line)
    try:
        d = Decimal(text)
    except InvalidOperation:  # pragma: no cover - regex already filters
        raise ParseError(f"bad weight {text!r}", line) from None
    digits = len(text.split(".", 1)[1]) if "." in text else 0
    if digits > MAX_DECIMALS:
        raise ParseError(f"weight {text!r} has more than {MAX_DECIMALS} fraction digits", line)
    return Fraction(d), digits


def _fraction_digits(q: Fraction) -> int:
    k = 0
    while (10**k) % q.denominator:
        k += 1
        if k > 30:
            raise ValueError(f"{q} has no finite decimal expansion")
    return k


def format_weight(q: Fraction | int, decimals: int | None = None) -> str:
    """Exact decimal text for ``q`` with at least ``decimals`` fraction digits."""
    q = Fraction(q)
    k = max(_fraction_digits(q), decimals or 0)
    if k == 0:
        return str(q.numerator)
    scaled = q * 10**k
    sign = "-" if scaled < 0 else ""
    digits = str(abs(scaled.numerator)).rjust(k + 1, "0")
    return f"{sign}{digits[:-k]}.{digits[-k:]}"


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        yield no, line.split()


def parse_graph(text: str) -> WeightedGraph:
    header = None
    edges = []
    decimals = 0
    for no, tok in _lines(text):
        if tok[0] == "p":
            if header is not None:
                raise ParseError("duplicate problem line", no)
            if len(tok) != 4 or tok[1] != "2match":
                raise ParseError("expected 'p 2match <n> <m>'", no)
            try:
                header = (int(tok[2]), int(tok[3]))
            except ValueError:
                raise ParseError("n and m must be integers", no) from None
            if header[0] < 0 or header[1] < 0:
                raise ParseError("n and m must be nonnegative", no)
        elif tok[0] == "e":
            if header is None:
                raise ParseError("edge line before problem line", no)
            if len(tok) != 4:
                raise ParseError("expected 'e <u> <v> <w>'", no)
            try:
                u, v = int(tok[1]), int(tok[2])
            except ValueError:
                raise ParseError("vertex ids must be integers", no) from None
            if not (1 <= u <= header[0] and 1 <= v <= header[0]):
                raise ParseError(f"vertex id out of range 1..{header[0]}", no)
            w, k = parse_weight(tok[3], no)
            decimals = max(decimals, k)
            edges.append((u - 1, v - 1, w))
        else:
            raise ParseError(f"unknown line type {tok[0]!r}", no)
    if header is None:
        raise ParseError("missing problem line")
    if len(edges) != header[1]:
        raise ParseError(f"header announces {header[1]} edges, found {len(edges)}")
    return WeightedGraph(header[0], edges, decimals=decimals)


def read_graph(path: str | Path) -> WeightedGraph:
    return parse_graph(Path(path).read_text())


def format_graph(g: WeightedGraph, comments: list[str] | None = None) -> str:
    out = [f"c {c}" for c in comments or []]
    out.append(f"p 2match {g.n} {g.m}")
    for (u, v), w in zip(g.edges, g.weights):
        out.append(f"e {u + 1} {v + 1} {format_weight(w, g.decimals)}")
    return "\n".join(out) + "\n"


@dataclass
class MatchingFile:
    variant: Variant
    weight: Fraction
    pairs: list[tuple[int, int]]  # 0-based


def parse_matching(text: str) -> MatchingFile:
    variant = weight = None
    pairs = []
    for no, tok in _lines(text):
        if tok[0] == "s":
            if variant is not None:
                raise ParseError("duplicate solution line", no)
            if len(tok) != 3:
                raise ParseError("expected 's <variant> <weight>'", no)
            try:
                variant = Variant.parse(tok[1])
            except ValueError:
                raise ParseError(f"unknown variant {tok[1]!r}", no) from None
            weight, _ = parse_weight(tok[2], no)
        elif tok[0] == "m":
            if len(tok) != 3:
                raise ParseError("expected 'm <u> <v>'", no)
            try:
                pairs.append((int(tok[1]) - 1, int(tok[2]) - 1))
            except ValueError:
                raise ParseError("vertex ids must be integers", no) from None
        else:
            raise ParseError(f"unknown line type {tok[0]!r}", no)
    if variant is None:
        raise ParseError("missing solution line")
    return MatchingFile(variant, weight, pairs)


def read_matching(path: str | Path) -> MatchingFile:
    return parse_matching(Path(path).read_text())


def format_matching(g: WeightedGraph, s: EdgeSet, variant: Variant | str) -> str:
    variant = Variant.parse(variant)
    out = [f"s {variant.value} {format_weight(set_weight(g, s), g.decimals)}"]
    for e in s:
        u, v = g.edges[e]
        out.append(f"m {u + 1} {v + 1}")
    return "\n".join(out) + "\n"
