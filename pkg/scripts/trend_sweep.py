#!/usr/bin/env python3
"""Sweep the line L target over ascending primes and print how the ratio
S2/S1 climbs toward its e^gamma log X scale (always from below).

Usage:
    python3 scripts/trend_sweep.py [--primes 100..2000] [--ell 1] [--out results/trend.csv]
"""

import argparse
import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from dirichlet_resonance.experiments import sweep, write_reports_csv


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--primes", default="100..2000")
    parser.add_argument("--ell", type=int, default=1)
    parser.add_argument("--jobs", type=int, default=1)
    parser.add_argument("--out", default="results/trend.csv")
    args = parser.parse_args()

    lo, hi = (int(t) for t in args.primes.split(".."))
    result = sweep(1, (lo, hi), ell=args.ell, jobs=args.jobs)

    print(f"{len(result.reports)} primes in [{lo}, {hi}], all margins >= 0: "
          f"{result.all_passed}")
    for blo, bhi, count, mean in result.decade_buckets():
        print(f"  q in [{blo}, {bhi}): n={count:4d}  mean ratio/(e^g logX)^ell = {mean:.6f}")
    worst = max(result.normalized_ratio(r) for r in result.reports)
    print(f"  max normalized ratio: {worst:.6f} (stays below 1)")

    os.makedirs(os.path.dirname(args.out) or ".", exist_ok=True)
    write_reports_csv(args.out, result.reports)
    print(f"-> {args.out}")
    return 0 if result.all_passed else 1


if __name__ == "__main__":
    raise SystemExit(main())
