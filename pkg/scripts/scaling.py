#!/usr/bin/env python3
"""Construction time against dataset size; reports the doubling ratios."""
import argparse

from cdtree.cli import run_bench


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--num-vars", type=int, default=40)
    ap.add_argument("--sizes", default="10000,20000,40000,80000")
    ap.add_argument("--reps", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rows = run_bench(args.num_vars, [int(s) for s in args.sizes.split(",")], args.reps, args.seed)
    prev = None
    print("num_vars,n,wall_ms,ratio")
    for m, n, ms in rows:
        ratio = f"{ms / prev:.2f}" if prev else ""
        print(f"{m},{n},{ms:.1f},{ratio}")
        prev = ms


if __name__ == "__main__":
    main()
