#!/usr/bin/env python3
"""Survey the gap-density extrema and kink structure for a range of n.

Prints, per n: the local extrema of the density with the scale-invariant
products t*f(t), the number of distinct non-differentiability times, and the
linear bounds.  Multimodality first appears at n = 7.
"""

import argparse

from staircase_gaps import distribution, nondiff


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--n-min", type=int, default=3)
    ap.add_argument("--n-max", type=int, default=10)
    args = ap.parse_args()

    for n in range(args.n_min, args.n_max + 1):
        stamps = nondiff.dedupe_stamps(nondiff.crossing_stamps(n))
        ext = distribution.find_local_extrema(n, 1.0, max(stamps) + 1.0)
        count = nondiff.count_nondiff(n)
        lo, hi = nondiff.bounds(n)
        n_max = sum(1 for _, _, kind in ext if kind == "max")
        print(f"n={n}: {n_max} local maxima, {count} kinks (bounds {lo:.1f}..{hi})")
        for t, f, kind in ext:
            print(f"    {kind:3s} t={t:.9f}  f={f:.9f}  t*f={t * f:.6f}")


if __name__ == "__main__":
    main()
