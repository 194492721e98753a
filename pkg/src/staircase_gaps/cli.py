"""Command-line surface.

Subcommands expose each stage of the pipeline with deterministic, file-based
outputs: geometry, section, rt-eval, distribution, volume, nondiff,
empirical, verify.  CSV uses '.' decimals, 17 significant digits and LF line
endings so doubles round-trip losslessly.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from staircase_gaps import distribution, enumeration, geometry, nondiff, section
from staircase_gaps.verify import run_checks


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", newline="") as fh:
            fh.write(text)


def _cmd_geometry(args) -> int:
    g = geometry.build_staircase(args.n)
    payload = {
        "n": g.n,
        "h": list(g.h),
        "v": list(g.v),
        "left_vertices": [list(p) for p in g.left_vertices],
        "right_vertices": [list(p) for p in g.right_vertices],
        "aspect_ratio": g.aspect_ratio,
    }
    _emit(json.dumps(payload, indent=2) + "\n", args.out)
    return 0


def _cmd_section(args) -> int:
    regions = section.build_partition(args.n)
    payload = {
        "n": args.n,
        "normalization": distribution.normalization(args.n),
        "regions": [
            {
                "index": r.index,
                "winner": list(r.winner),
                "constraints": [
                    {"a": c.a, "b": c.b, "relation": "gt" if c.strict else "le"}
                    for c in r.constraints
                ],
                "vertices": {k: list(v) for k, v in r.corners.items()},
            }
            for r in regions
        ],
    }
    _emit(json.dumps(payload, indent=2) + "\n", args.out)
    return 0


def _cmd_rt_eval(args) -> int:
    comp = (
        section.SectionComponent.OMEGA2
        if args.component == "omega2"
        else section.SectionComponent.OMEGA1
    )
    p = section.SectionPoint(comp, args.x, args.y)
    t = section.return_time(args.n, p)
    if args.json:
        idx = section.classify(args.n, p)
        payload = {
            "component": args.component,
            "x": args.x,
            "y": args.y,
            "region": idx,
            "winner": list(section.winner_at(args.n, p)),
            "return_time": t,
        }
        _emit(json.dumps(payload, indent=2) + "\n", args.out)
    else:
        _emit(_fmt(t) + "\n", args.out)
    return 0


def _cmd_distribution(args) -> int:
    grid = np.linspace(args.t_min, args.t_max, args.samples)
    table = distribution.sample_distribution(args.n, grid, refine_stamps=args.refine_stamps)
    if args.format == "csv":
        lines = ["t,pdf,cdf"]
        for t, p, c in zip(table.t, table.pdf, table.cdf):
            lines.append(f"{_fmt(t)},{_fmt(p)},{_fmt(c)}")
        _emit("\n".join(lines) + "\n", args.out)
    else:
        payload = {
            "n": table.n,
            "normalization": table.normalization,
            "rows": [
                {"t": float(t), "pdf": float(p), "cdf": float(c)}
                for t, p, c in zip(table.t, table.pdf, table.cdf)
            ],
        }
        _emit(json.dumps(payload, indent=2) + "\n", args.out)
    return 0


def _cmd_volume(args) -> int:
    val = distribution.covolume(args.n, tol=args.tol)
    ref = distribution.reference_covolume(args.n)
    rel = abs(val - ref) / ref
    _emit(
        f"computed  {_fmt(val)}\nreference {_fmt(ref)}\nrel-error {rel:.3e}\n",
        args.out,
    )
    return 0


def _cmd_nondiff(args) -> int:
    stamps = nondiff.crossing_stamps(args.n)
    times = nondiff.dedupe_stamps(stamps)
    count = nondiff.count_nondiff(args.n)
    lo, hi = nondiff.bounds(args.n)
    if args.json:
        payload = {
            "n": args.n,
            "stamps": [
                {
                    "region": s.region,
                    "time": s.time,
                    "kind": s.kind,
                    "increasing": s.increasing,
                    "valid": s.valid,
                    "duplicate": s.duplicate,
                }
                for s in stamps
            ],
            "deduped_times": times,
            "kink_count": count,
            "lower_bound": lo,
            "upper_bound": hi,
        }
        _emit(json.dumps(payload, indent=2) + "\n", args.out)
    else:
        lines = [f"{'region':>6} {'time':>22} {'kind':<12} {'valid':<5} dup"]
        for s in sorted(stamps, key=lambda s: (s.time, s.region)):
            lines.append(
                f"P{s.region:<5d} {_fmt(s.time):>22} {s.kind:<12} {str(s.valid):<5} {s.duplicate}"
            )
        lines.append(f"distinct valid times: {len(times)}")
        lines.append(f"kink count: {count}")
        lines.append(f"bounds: {lo:.2f} .. {hi}")
        _emit("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_empirical(args) -> int:
    sample = enumeration.slope_gaps(args.n, args.k, max_depth=args.depth)
    ks = enumeration.empirical_vs_analytic(args.n, args.k, max_depth=args.depth)
    if args.dump_vectors:
        res = enumeration.orbit_enumerate(args.n, args.k, max_depth=args.depth)
        rows = ["x,y"] + [f"{_fmt(x)},{_fmt(y)}" for x, y in sorted(res.vectors)]
        with open(args.dump_vectors, "w", newline="") as fh:
            fh.write("\n".join(rows) + "\n")
    if args.out:
        rows = ["gap"] + [_fmt(g) for g in np.sort(sample.gaps)]
        _emit("\n".join(rows) + "\n", args.out)
    summary = {
        "n": args.n,
        "k": args.k,
        "count": sample.count,
        "ks_distance": ks,
        "stable": sample.stable,
    }
    sys.stdout.write(json.dumps(summary, indent=2) + "\n")
    return 0


def _cmd_verify(args) -> int:
    results = run_checks(args.n, fast=not args.full)
    width = max(len(r.name) for r in results)
    failed = 0
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        sys.stdout.write(f"{r.name:<{width}}  {status}  {r.detail}\n")
        failed += 0 if r.passed else 1
    sys.stdout.write(f"{len(results) - failed}/{len(results)} checks passed\n")
    return 0 if failed == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="staircase-gaps",
        description="Slope gap distributions of saddle connections on regular 2n-gons",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_n(p):
        p.add_argument("--n", type=int, required=True, help="half the number of polygon sides (n >= 3)")

    p = sub.add_parser("geometry", help="staircase edge lengths and vertices")
    add_n(p)
    p.add_argument("--out", default="-")
    p.set_defaults(func=_cmd_geometry)

    p = sub.add_parser("section", help="Poincare section partition and winners")
    add_n(p)
    p.add_argument("--out", default="-")
    p.set_defaults(func=_cmd_section)

    p = sub.add_parser("rt-eval", help="return time at one section point")
    add_n(p)
    p.add_argument("--component", choices=["omega1", "omega2"], required=True)
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--y", type=float, required=True)
    p.add_argument("--json", action="store_true")
    p.add_argument("--out", default="-")
    p.set_defaults(func=_cmd_rt_eval)

    p = sub.add_parser("distribution", help="tabulate the gap density and CDF")
    add_n(p)
    p.add_argument("--t-min", type=float, default=1.0)
    p.add_argument("--t-max", type=float, default=10.0)
    p.add_argument("--samples", type=int, default=901)
    p.add_argument("--refine-stamps", action="store_true")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--out", default="-")
    p.set_defaults(func=_cmd_distribution)

    p = sub.add_parser("volume", help="integral of the return time vs (n-1)pi^2/n")
    add_n(p)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--out", default="-")
    p.set_defaults(func=_cmd_volume)

    p = sub.add_parser("nondiff", help="crossing stamps, kink count and bounds")
    add_n(p)
    p.add_argument("--json", action="store_true")
    p.add_argument("--out", default="-")
    p.set_defaults(func=_cmd_nondiff)

    p = sub.add_parser("empirical", help="brute-force gap sample vs analytic CDF")
    add_n(p)
    p.add_argument("--k", type=float, required=True)
    p.add_argument("--depth", type=int, default=256)
    p.add_argument("--dump-vectors", default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_empirical)

    p = sub.add_parser("verify", help="run the cross-module invariant suite")
    add_n(p)
    p.add_argument("--full", action="store_true", help="full-scale sample counts")
    p.set_defaults(func=_cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, RuntimeError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
