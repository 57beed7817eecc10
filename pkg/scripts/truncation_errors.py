#!/usr/bin/env python3
"""Measure how fast truncated Euler products close in on the exact oracle
as the cutoff Y grows by decades, for every non-principal character of each
requested modulus.

Usage:
    python3 scripts/truncation_errors.py [--qs 5 31 101 199] [--sigma 1.0]
"""

import argparse
import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from dirichlet_resonance.experiments import oracle_comparison, write_oracle_csv


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--qs", type=int, nargs="+", default=[5, 31, 101, 199])
    parser.add_argument("--sigma", type=float, default=1.0)
    parser.add_argument("--grid", type=int, nargs="+",
                        default=[100, 1000, 10000, 100000, 1000000])
    parser.add_argument("--outdir", default="results")
    args = parser.parse_args()

    os.makedirs(args.outdir, exist_ok=True)
    header = "      q " + "".join(f"  Y=1e{len(str(y)) - 1}" for y in sorted(args.grid))
    print(header)
    for q in args.qs:
        comp = oracle_comparison(q, args.sigma, tuple(args.grid))
        row = " ".join(f"{m:8.1e}" for m in comp.decade_max())
        dropped = f"  ({len(comp.excluded_near_zero)} near-zero excluded)" \
            if comp.excluded_near_zero else ""
        print(f"{q:7d} {row}{dropped}")
        write_oracle_csv(os.path.join(args.outdir, f"truncation_q{q}.csv"), comp)
    print(f"-> per-character tables in {args.outdir}/")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
