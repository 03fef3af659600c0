"""Timing of the solver pipeline and of the two kernel backends."""

from __future__ import annotations

import json
import math
import os
import subprocess
import sys
import time
from dataclasses import asdict, dataclass

from ._accel import BACKEND
from .cycles import classify, enumerate_short_cycles
from .gadgets import build_auxiliary
from .generate import generate
from .graph import Variant, set_weight
from .io import format_weight
from .lu_solver import max_weight_lu_matching
from .reconstruct import cleanup, lift_raw

__all__ = ["BenchRow", "bench_instance", "run_bench", "growth_exponent", "format_table", "compare_backends"]


@dataclass
class BenchRow:
    n: int
    seed: int
    m: int
    aux_vertices: int
    aux_edges: int
    build_s: float
    solve_s: float
    lift_s: float
    weight: str

    @property
    def total_s(self) -> float:
        return self.build_s + self.solve_s + self.lift_s


def bench_instance(n: int, seed: int, variant: Variant | str, mode: str) -> BenchRow:
    variant = Variant.parse(variant)
    g = generate(n, seed, mode)
    t0 = time.perf_counter()
    cls = classify(enumerate_short_cycles(g), g, variant)
    aux = build_auxiliary(g, variant, cls)
    t1 = time.perf_counter()
    mp = max_weight_lu_matching(aux.instance)
    t2 = time.perf_counter()
    m = cleanup(lift_raw(mp, aux), variant, cls, g)
    t3 = time.perf_counter()
    return BenchRow(
        n, seed, g.m, aux.active_vertices, aux.instance.m, t1 - t0, t2 - t1, t3 - t2,
        format_weight(set_weight(g, m), g.decimals),
    )


def _warm_up() -> None:
    # compile the kernels outside the timed region
    bench_instance(12, 0, Variant.TRIANGLE_FREE, "planted-triangles")


def run_bench(sizes, seeds, variant="triangle-free", mode="planted-triangles") -> list[BenchRow]:
    _warm_up()
    return [bench_instance(n, s, variant, mode) for n in sizes for s in seeds]


def growth_exponent(rows: list[BenchRow]) -> float:
    """Least-squares slope of log(total time) against log(n)."""
    xs = [math.log(r.n) for r in rows]
    ys = [math.log(max(r.total_s, 1e-9)) for r in rows]
    mx, my = sum(xs) / len(xs), sum(ys) / len(ys)
    sxx = sum((x - mx) ** 2 for x in xs)
    if sxx == 0:
        raise ValueError("need at least two distinct sizes")
    return sum((x - mx) * (y - my) for x, y in zip(xs, ys)) / sxx


def format_table(rows: list[BenchRow]) -> str:
    head = f"{'n':>6} {'seed':>4} {'m':>6} {'|V_aux|':>8} {'|E_aux|':>8} {'build_s':>9} {'solve_s':>9} {'lift_s':>9} {'weight':>10}"
    lines = [head]
    for r in rows:
        lines.append(
            f"{r.n:>6} {r.seed:>4} {r.m:>6} {r.aux_vertices:>8} {r.aux_edges:>8} "
            f"{r.build_s:>9.3f} {r.solve_s:>9.3f} {r.lift_s:>9.3f} {r.weight:>10}"
        )
    return "\n".join(lines)


def compare_backends(sizes, seeds, variant="triangle-free", mode="planted-triangles") -> dict[str, list[dict]]:
    """Run the bench in fresh interpreters with the JIT on and off."""
    out = {}
    for flag in ("1", "0"):
        env = dict(os.environ, RESTRICTED2M_JIT=flag)
        cmd = [
            sys.executable, "-m", "restricted2m.bench",
            "--sizes", ",".join(map(str, sizes)),
            "--seeds", ",".join(map(str, seeds)),
            "--variant", str(Variant.parse(variant).value),
            "--mode", mode,
        ]
        res = subprocess.run(cmd, env=env, capture_output=True, text=True, check=True)
        payload = json.loads(res.stdout)
        out[payload["backend"]] = payload["rows"]
    return out


def _main(argv=None) -> int:
    import argparse

    ap = argparse.ArgumentParser(description="bench worker: prints JSON rows for the active backend")
    ap.add_argument("--sizes", required=True)
    ap.add_argument("--seeds", default="0")
    ap.add_argument("--variant", default="triangle-free")
    ap.add_argument("--mode", default="planted-triangles")
    args = ap.parse_args(argv)
    sizes = [int(x) for x in args.sizes.split(",")]
    seeds = [int(x) for x in args.seeds.split(",")]
    rows = run_bench(sizes, seeds, args.variant, args.mode)
    print(json.dumps({"backend": BACKEND, "rows": [asdict(r) | {"total_s": r.total_s} for r in rows]}))
    return 0


if __name__ == "__main__":
    raise SystemExit(_main())
