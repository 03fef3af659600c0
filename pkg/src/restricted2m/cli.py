"""Command-line front end.

Exit codes: 0 success, 1 invalid matching (``verify``), 2 bad input or
arguments, 3 internal invariant failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .cycles import NotVertexInduced, classify, enumerate_short_cycles, verify_vertex_induced
from .gadgets import build_auxiliary, dump_auxiliary
from .generate import MODES, generate
from .graph import EdgeSet, GraphError, Variant, forbidden_cycles, set_weight, validate_input
from .io import format_graph, format_matching, format_weight, parse_graph, parse_matching
from .lu_solver import InstanceTooLarge
from .oracle import brute_force_solve
from .reconstruct import CleanupDiverged, MalformedMatching, solve

EXIT_OK, EXIT_INVALID, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3
VARIANTS = [v.value for v in Variant]


class UsageError(Exception):
    pass


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _load_graph(path: str):
    try:
        text = Path(path).read_text()
    except OSError as ex:
        raise UsageError(f"cannot read {path}: {ex.strerror}") from None
    g = parse_graph(text)
    validate_input(g)
    return g


def cmd_solve(args) -> int:
    g = _load_graph(args.graph)
    m = solve(g, args.variant)
    _emit(format_matching(g, m, args.variant), args.out)
    return EXIT_OK


def cmd_oracle(args) -> int:
    g = _load_graph(args.graph)
    variant = Variant.parse(args.variant)
    if variant.forbids_squares:
        bad = verify_vertex_induced(g, enumerate_short_cycles(g))
        if bad:
            raise NotVertexInduced(bad[0].vertices)
    m = brute_force_solve(g, variant)
    _emit(format_matching(g, m, variant), args.out)
    return EXIT_OK


def cmd_gen(args) -> int:
    if args.n is None or args.n < 1:
        raise UsageError("--n must be a positive integer")
    g = generate(args.n, args.seed, args.mode, k4=args.k4)
    comments = [f"generated n={args.n} seed={args.seed} mode={args.mode} k4={args.k4}"]
    _emit(format_graph(g, comments), args.out)
    return EXIT_OK


def _check_matching(g, mf, variant) -> list[str]:
    problems = []
    ids = []
    for u, v in mf.pairs:
        if not (0 <= u < g.n and 0 <= v < g.n) or not g.has_edge(u, v):
            problems.append(f"edge ({u + 1}, {v + 1}) is not in the graph")
            continue
        e = g.edge_id(u, v)
        if e in ids:
            problems.append(f"edge ({u + 1}, {v + 1}) listed twice")
            continue
        ids.append(e)
    s = EdgeSet(g, ids)
    for v in range(g.n):
        if s.degree[v] > 2:
            problems.append(f"vertex {v + 1} has degree {int(s.degree[v])} > 2")
    for c in forbidden_cycles(g, s, variant):
        kind = "triangle" if len(c) == 3 else "square"
        problems.append(f"forbidden {kind} {tuple(x + 1 for x in c)}")
    got = set_weight(g, s)
    if got != mf.weight:
        problems.append(
            f"weight line says {format_weight(mf.weight, g.decimals)}, edges sum to {format_weight(got, g.decimals)}"
        )
    return problems


def cmd_verify(args) -> int:
    g = _load_graph(args.graph)
    try:
        text = Path(args.matching).read_text()
    except OSError as ex:
        raise UsageError(f"cannot read {args.matching}: {ex.strerror}") from None
    mf = parse_matching(text)
    variant = Variant.parse(args.variant) if args.variant else mf.variant
    if args.variant and variant is not mf.variant:
        print(f"note: file declares {mf.variant.value}, checking {variant.value}", file=sys.stderr)
    problems = _check_matching(g, mf, variant)
    for p in problems:
        print(f"violation: {p}")
    if problems:
        return EXIT_INVALID
    print(f"ok: valid {variant.value} 2-matching of weight {format_weight(mf.weight, g.decimals)}")
    return EXIT_OK


def cmd_dump_aux(args) -> int:
    g = _load_graph(args.graph)
    variant = Variant.parse(args.variant)
    catalog = enumerate_short_cycles(g)
    if variant.forbids_squares:
        bad = verify_vertex_induced(g, catalog)
        if bad:
            raise NotVertexInduced(bad[0].vertices)
    aux = build_auxiliary(g, variant, classify(catalog, g, variant))
    _emit(dump_auxiliary(aux), args.out)
    return EXIT_OK


def _int_list(text: str) -> list[int]:
    try:
        vals = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if not vals:
        raise argparse.ArgumentTypeError("empty list")
    return vals


def cmd_bench(args) -> int:
    from .bench import format_table, growth_exponent, run_bench

    rows = run_bench(args.sizes, args.seeds, args.variant, args.mode)
    text = format_table(rows)
    if len({r.n for r in rows}) > 1:
        text += f"\nempirical growth exponent (total time vs n): {growth_exponent(rows):.2f}"
    _emit(text + "\n", args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="restricted2m", description="Maximum-weight restricted 2-matchings in subcubic graphs.")
    sub = ap.add_subparsers(dest="command", required=True)

    def variant_arg(p, required=True):
        p.add_argument("--variant", choices=VARIANTS, required=required)

    p = sub.add_parser("solve", help="solve a graph file")
    p.add_argument("graph")
    variant_arg(p)
    p.add_argument("--out")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("oracle", help="exhaustive solve (at most 24 edges)")
    p.add_argument("graph")
    variant_arg(p)
    p.add_argument("--out")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("gen", help="generate a connected subcubic instance")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mode", choices=MODES, default="subcubic")
    p.add_argument("--k4", type=int, default=0, help="number of extra K4 components")
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("verify", help="check a matching file against a graph")
    p.add_argument("graph")
    p.add_argument("matching")
    variant_arg(p, required=False)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("dump-aux", help="print the auxiliary capacitated instance")
    p.add_argument("graph")
    variant_arg(p)
    p.add_argument("--out")
    p.set_defaults(func=cmd_dump_aux)

    p = sub.add_parser("bench", help="time the pipeline on generated instances")
    p.add_argument("--sizes", type=_int_list, default=[100, 200, 500, 1000, 2000])
    p.add_argument("--seeds", type=_int_list, default=[0])
    p.add_argument("--variant", choices=VARIANTS, default="triangle-free")
    p.add_argument("--mode", choices=MODES, default="planted-triangles")
    p.add_argument("--out")
    p.set_defaults(func=cmd_bench)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as ex:
        return EXIT_INPUT if ex.code else EXIT_OK
    try:
        return args.func(args)
    except (GraphError, NotVertexInduced, InstanceTooLarge, UsageError) as ex:
        print(f"error: {ex}", file=sys.stderr)
        return EXIT_INPUT
    except (CleanupDiverged, MalformedMatching, AssertionError) as ex:
        print(f"internal error: {type(ex).__name__}: {ex}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    raise SystemExit(main())
