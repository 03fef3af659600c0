"""Compare the numba and pure-Python kernel backends, then time the pipeline.

Usage: python3 benchmarks/bench_backends.py [--sizes 100,200,400] [--seeds 0]
"""

import argparse

from restricted2m.bench import compare_backends, format_table, growth_exponent, run_bench


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="100,200,400")
    ap.add_argument("--seeds", default="0")
    ap.add_argument("--pipeline-sizes", default="250,500,1000,2000")
    args = ap.parse_args()
    sizes = [int(x) for x in args.sizes.split(",")]
    seeds = [int(x) for x in args.seeds.split(",")]

    rows = compare_backends(sizes, seeds)
    print(f"{'n':>6} {'seed':>4} {'numba_s':>9} {'python_s':>9} {'speedup':>8} {'same weight':>12}")
    for a, b in zip(rows["numba"], rows["python"]):
        speed = b["total_s"] / max(a["total_s"], 1e-9)
        print(f"{a['n']:>6} {a['seed']:>4} {a['total_s']:>9.3f} {b['total_s']:>9.3f} {speed:>8.1f} {str(a['weight'] == b['weight']):>12}")

    print()
    big = run_bench([int(x) for x in args.pipeline_sizes.split(",")], [0])
    print(format_table(big))
    print(f"empirical growth exponent: {growth_exponent(big):.2f}")


if __name__ == "__main__":
    main()
