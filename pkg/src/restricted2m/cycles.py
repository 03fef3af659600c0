"""Short-cycle enumeration and classification for subcubic graphs.

Triangles and squares are enumerated once each, classified per variant as
problematic (needs a gadget) or unproblematic (removable by a local swap),
and problematic triangle/square pairs sharing two edges are grouped into
double triangles.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .graph import Variant, WeightedGraph

log = logging.getLogger(__name__)

__all__ = [
    "ShortCycle",
    "ShortCycleCatalog",
    "DoubleTriangle",
    "DoubleTriangleProfile",
    "Classification",
    "NotVertexInduced",
    "InfeasiblePattern",
    "enumerate_short_cycles",
    "classify",
    "triangle_potentials",
    "square_potentials",
    "verify_vertex_induced",
    "double_triangle_profile",
    "check_classification",
]

TRIANGLE = "triangle"
SQUARE = "square"

PROBLEMATIC = "problematic"
UNPROBLEMATIC = "unproblematic"
DOUBLE_TRIANGLE = "double-triangle"


class NotVertexInduced(ValueError):
    rule = "vertex-induced"

    def __init__(self, square: tuple[int, ...]):
        super().__init__(f"vertex-induced: square {square} has wab + wcd != wbc + wda")
        self.square = square


class InfeasiblePattern(RuntimeError):
    pass


@dataclass(frozen=True)
class ShortCycle:
    kind: str
    vertices: tuple[int, ...]
    native_edges: tuple[int, ...]
    weight: int  # scaled

    @property
    def length(self) -> int:
        return len(self.vertices)

    def cycle_pairs(self) -> list[tuple[int, int]]:
        vs = self.vertices
        return [(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]

    def rotated(self, start: int, toward: int) -> tuple[int, ...]:
        """Vertices in cycle order beginning ``start, toward, ...``."""
        vs = list(self.vertices)
        i = vs.index(start)
        vs = vs[i:] + vs[:i]
        if vs[1] != toward:
            vs = [vs[0]] + vs[:0:-1]
        if vs[1] != toward:
            raise ValueError(f"{toward} is not a cycle neighbour of {start}")
        return tuple(vs)


@dataclass
class ShortCycleCatalog:
    triangles: list[ShortCycle]
    squares: list[ShortCycle]
    by_edge: dict[int, list[ShortCycle]] = field(default_factory=dict)

    def all(self) -> list[ShortCycle]:
        return self.triangles + self.squares

    def relevant(self, variant: Variant) -> list[ShortCycle]:
        out = []
        if variant.forbids_triangles:
            out += self.triangles
        if variant.forbids_squares:
            out += self.squares
        return out


@dataclass(frozen=True)
class DoubleTriangle:
    """K4 minus the edge ``(a, b)``; ``c`` and ``d`` are the degree-3 pair."""

    a: int
    b: int
    c: int
    d: int
    square: ShortCycle
    triangle: ShortCycle

    @property
    def vertices(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    def role_edges(self) -> list[tuple[str, int, int]]:
        a, b, c, d = self.vertices
        return [("ac", a, c), ("ad", a, d), ("bc", b, c), ("bd", b, d), ("cd", c, d)]


@dataclass(frozen=True)
class DoubleTriangleProfile:
    """Best C4-free 2-matchings of a double triangle per degree pattern.

    ``weights[(i, j)]`` is the best weight with ``deg(a) = i`` and
    ``deg(b) = j`` exactly, ``witnesses[(i, j)]`` an edge set achieving it.
    """

    weights: dict[tuple[int, int], int]
    witnesses: dict[tuple[int, int], tuple[int, ...]]

    @property
    def m11(self) -> int:
        return self.weights[(1, 1)]

    @property
    def m21(self) -> int:
        return self.weights[(2, 1)]

    @property
    def m12(self) -> int:
        return self.weights[(1, 2)]


@dataclass
class Classification:
    variant: Variant
    labels: dict[ShortCycle, str]
    witnesses: dict[ShortCycle, ShortCycle]
    double_triangles: list[DoubleTriangle]

    def problematic(self, kind: str | None = None) -> list[ShortCycle]:
        return [
            c
            for c, lab in self.labels.items()
            if lab == PROBLEMATIC and (kind is None or c.kind == kind)
        ]

    def unproblematic(self) -> list[ShortCycle]:
        return [c for c, lab in self.labels.items() if lab == UNPROBLEMATIC]


def _make_cycle(g: WeightedGraph, kind: str, vs: tuple[int, ...]) -> ShortCycle:
    ids = tuple(g.edge_id(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs)))
    return ShortCycle(kind, vs, ids, sum(g.scaled[e] for e in ids))


def enumerate_short_cycles(g: WeightedGraph) -> ShortCycleCatalog:
    """Every triangle and square of ``g`` exactly once.

    Triangles come out as sorted vertex triples; a square ``(a, b, c, d)``
    starts at its smallest vertex ``a`` with ``b < d``.
    """
    nbrs = [set(g.neighbors(v)) for v in range(g.n)]
    triangles, squares = [], []
    for a in range(g.n):
        for b, d in combinations(sorted(nbrs[a]), 2):
            if a < b and d in nbrs[b]:
                triangles.append(_make_cycle(g, TRIANGLE, (a, b, d)))
            if a < b:
                for c in sorted(nbrs[b] & nbrs[d]):
                    if c > a:
                        squares.append(_make_cycle(g, SQUARE, (a, b, c, d)))
    triangles.sort(key=lambda c: c.vertices)
    squares.sort(key=lambda c: c.vertices)
    by_edge: dict[int, list[ShortCycle]] = {}
    for c in triangles + squares:
        for e in c.native_edges:
            by_edge.setdefault(e, []).append(c)
    return ShortCycleCatalog(triangles, squares, by_edge)


def _shared(c1: ShortCycle, c2: ShortCycle) -> int:
    return len(set(c1.native_edges) & set(c2.native_edges))


def _neighbours(catalog: ShortCycleCatalog, c: ShortCycle, kind: str) -> list[ShortCycle]:
    seen: dict[ShortCycle, None] = {}
    for e in c.native_edges:
        for o in catalog.by_edge.get(e, ()):
            if o is not c and o.kind == kind:
                seen[o] = None
    return list(seen)


def _triangle_witness(catalog, t) -> ShortCycle | None:
    best = None
    for o in _neighbours(catalog, t, TRIANGLE):
        if t.weight <= o.weight and (best is None or o.weight > best.weight):
            best = o
    return best


def _square_witness(catalog, s) -> ShortCycle | None:
    one_edge = [o for o in _neighbours(catalog, s, SQUARE) if _shared(s, o) == 1]
    if one_edge:
        return one_edge[0]
    best = None
    for o in _neighbours(catalog, s, SQUARE):
        if _shared(s, o) == 2 and s.weight <= o.weight and (best is None or o.weight > best.weight):
            best = o
    return best


def classify(catalog: ShortCycleCatalog, g: WeightedGraph, variant: Variant | str) -> Classification:
    """Label every variant-relevant short cycle.

    A cycle is unproblematic when a witness cycle allows a local,
    weight-nondecreasing swap to destroy it; the witness is recorded.
    Under ``C4_FREE`` a problematic square and a problematic triangle that
    share two edges are merged into one :class:`DoubleTriangle`.
    """
    variant = Variant.parse(variant)
    labels: dict[ShortCycle, str] = {}
    witnesses: dict[ShortCycle, ShortCycle] = {}

    if variant.forbids_triangles:
        for t in catalog.triangles:
            wit = None
            if variant is Variant.C4_FREE:
                sq = [o for o in _neighbours(catalog, t, SQUARE) if _shared(t, o) == 1]
                wit = sq[0] if sq else None
            if wit is None:
                wit = _triangle_witness(catalog, t)
            labels[t] = UNPROBLEMATIC if wit is not None else PROBLEMATIC
            if wit is not None:
                witnesses[t] = wit
    if variant.forbids_squares:
        for s in catalog.squares:
            wit = _square_witness(catalog, s)
            labels[s] = UNPROBLEMATIC if wit is not None else PROBLEMATIC
            if wit is not None:
                witnesses[s] = wit

    doubles: list[DoubleTriangle] = []
    if variant is Variant.C4_FREE:
        for s in catalog.squares:
            if labels[s] != PROBLEMATIC:
                continue
            for t in _neighbours(catalog, s, TRIANGLE):
                if labels.get(t) == PROBLEMATIC and _shared(s, t) == 2:
                    doubles.append(_double_triangle(g, s, t))
                    labels[s] = DOUBLE_TRIANGLE
                    labels[t] = DOUBLE_TRIANGLE
                    break
        doubles.sort(key=lambda T: min(T.vertices))

    return Classification(variant, labels, witnesses, doubles)


def _double_triangle(g: WeightedGraph, s: ShortCycle, t: ShortCycle) -> DoubleTriangle:
    # b: the square vertex outside the triangle; a: its opposite on the square
    b = next(v for v in s.vertices if v not in t.vertices)
    i = s.vertices.index(b)
    a = s.vertices[(i + 2) % 4]
    c, d = sorted(v for v in s.vertices if v not in (a, b))
    if g.has_edge(a, b) or not g.has_edge(c, d):
        raise AssertionError(f"{s.vertices} and {t.vertices} do not form K4 minus an edge")
    return DoubleTriangle(a, b, c, d, s, t)


def check_classification(cls: Classification) -> None:
    """Assert the disjointness invariants of a classification.

    Problematic cycles (double triangles counted as one unit) must be
    pairwise vertex-disjoint.
    """
    units: list[tuple[str, frozenset[int]]] = []
    for c in cls.problematic():
        units.append((f"{c.kind} {c.vertices}", frozenset(c.vertices)))
    for T in cls.double_triangles:
        units.append((f"double triangle {T.vertices}", frozenset(T.vertices)))
    for (n1, v1), (n2, v2) in combinations(units, 2):
        if v1 & v2:
            raise AssertionError(f"problematic {n1} and {n2} overlap")


def triangle_potentials(wab, wbc, wca) -> tuple[Fraction, Fraction, Fraction]:
    """Vertex values ``(ra, rb, rc)`` with ``ra + rb = wab`` etc.

    Exact for any weights, including ones violating the triangle
    inequality (potentials may then be negative).
    """
    wab, wbc, wca = Fraction(wab), Fraction(wbc), Fraction(wca)
    return ((wab + wca - wbc) / 2, (wab + wbc - wca) / 2, (wbc + wca - wab) / 2)


def _square_weights(g: WeightedGraph, s: ShortCycle) -> tuple[int, int, int, int]:
    a, b, c, d = s.vertices
    return (g.weight_of(a, b), g.weight_of(b, c), g.weight_of(c, d), g.weight_of(d, a))


def verify_vertex_induced(g: WeightedGraph, catalog: ShortCycleCatalog) -> list[ShortCycle]:
    """Squares whose native edge weights admit no potentials.

    A square ``(a, b, c, d)`` is consistent iff ``wab + wcd == wbc + wda``.
    Diagonals are not constrained.
    """
    bad = []
    for s in catalog.squares:
        wab, wbc, wcd, wda = _square_weights(g, s)
        if wab + wcd != wbc + wda:
            bad.append(s)
    return bad


def square_potentials_from_weights(wab, wbc, wcd, wda) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    wab, wbc, wcd, wda = map(Fraction, (wab, wbc, wcd, wda))
    if wab + wcd != wbc + wda:
        raise NotVertexInduced((wab, wbc, wcd, wda))
    ra = wab / 2
    rb = wab - ra
    rc = wbc - rb
    rd = wda - ra
    return ra, rb, rc, rd


def square_potentials(s: ShortCycle, g: WeightedGraph) -> dict[int, Fraction]:
    """Potentials of square ``s`` in scaled units, gauge ``r_a = w(a, b) / 2``."""
    try:
        pots = square_potentials_from_weights(*_square_weights(g, s))
    except NotVertexInduced:
        raise NotVertexInduced(s.vertices) from None
    out = dict(zip(s.vertices, pots))
    _warn_diagonals(g, s, out)
    return out


def _warn_diagonals(g: WeightedGraph, s: ShortCycle, r: dict[int, Fraction]) -> None:
    # The potentials are only fixed up to r_a+t, r_b-t, r_c+t, r_d-t, so
    # a diagonal can be matched by some gauge unless both diagonals exist.
    a, b, c, d = s.vertices
    if g.has_edge(a, c) and g.has_edge(b, d):
        if g.weight_of(a, c) + g.weight_of(b, d) != sum(r.values()):
            log.warning("square %s: diagonal weights are not vertex-induced", s.vertices)


def cycle_potentials(g: WeightedGraph, c: ShortCycle) -> dict[int, int]:
    """Integer (scaled) potentials of a triangle or square."""
    if c.kind == TRIANGLE:
        a, b, cc = c.vertices
        pots = dict(
            zip(c.vertices, triangle_potentials(g.weight_of(a, b), g.weight_of(b, cc), g.weight_of(cc, a)))
        )
    else:
        pots = square_potentials(c, g)
    out = {}
    for v, r in pots.items():
        if r.denominator != 1:
            raise ArithmeticError(f"potential {r} of {c.vertices} is not integral")
        out[v] = int(r)
    return out


_T_FORBIDDEN = (
    frozenset({"ac", "ad", "cd"}),
    frozenset({"bc", "bd", "cd"}),
    frozenset({"ac", "bc", "bd", "ad"}),
)


def double_triangle_profile(T: DoubleTriangle, g: WeightedGraph) -> DoubleTriangleProfile:
    """Exhaustive best C4-free 2-matchings of ``T`` for patterns (1,1), (2,1), (1,2).

    Ties go to the lexicographically smallest role-labelled edge list.
    """
    roles = T.role_edges()
    weights: dict[tuple[int, int], int] = {}
    witnesses: dict[tuple[int, int], tuple[int, ...]] = {}
    keys: dict[tuple[int, int], list[str]] = {}
    for mask in range(1 << len(roles)):
        chosen = [roles[i] for i in range(len(roles)) if mask >> i & 1]
        names = frozenset(r[0] for r in chosen)
        deg = {v: 0 for v in T.vertices}
        for _, u, v in chosen:
            deg[u] += 1
            deg[v] += 1
        if max(deg.values()) > 2 or any(f <= names for f in _T_FORBIDDEN):
            continue
        pattern = (deg[T.a], deg[T.b])
        if pattern not in ((1, 1), (2, 1), (1, 2)):
            continue
        ids = tuple(g.edge_id(u, v) for _, u, v in chosen)
        w = sum(g.scaled[e] for e in ids)
        key = sorted(names)
        if pattern not in weights or w > weights[pattern] or (w == weights[pattern] and key < keys[pattern]):
            weights[pattern] = w
            witnesses[pattern] = tuple(sorted(ids))
            keys[pattern] = key
    for pattern in ((1, 1), (2, 1), (1, 2)):
        if pattern not in weights:
            raise InfeasiblePattern(f"double triangle {T.vertices} has no pattern {pattern}")
    return DoubleTriangleProfile(weights, witnesses)
