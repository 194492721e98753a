#!/usr/bin/env python3
"""Convergence study: KS distance of brute-force gap samples vs the analytic CDF.

Fixes the strip-width-60 acceptance threshold used by the test suite.  The
most recent run is committed as ks_convergence_results.txt next to this
script; rerun with

    python scripts/ks_convergence.py
"""

import time

from staircase_gaps import enumeration

NS = (3, 5, 7)
KS_GRID = (10.0, 20.0, 40.0, 60.0, 90.0, 120.0)


def main() -> None:
    print(f"{'n':>3} {'k':>6} {'N(k)':>7} {'KS':>9} {'stable':>7} {'secs':>6}")
    worst_at_60 = 0.0
    for n in NS:
        for k in KS_GRID:
            t0 = time.time()
            sample = enumeration.slope_gaps(n, k)
            ks = enumeration.empirical_vs_analytic(n, k)
            if k == 60.0:
                worst_at_60 = max(worst_at_60, ks)
            print(
                f"{n:>3} {k:>6.0f} {sample.count:>7} {ks:>9.4f} "
                f"{str(sample.stable):>7} {time.time() - t0:>6.1f}"
            )
    print()
    print(f"worst KS at k=60: {worst_at_60:.4f}")
    print("threshold adopted by the acceptance suite: 0.05")


if __name__ == "__main__":
    main()
