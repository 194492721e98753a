"""Cross-module invariant suite backing the `verify` CLI command.

Each check returns a CheckResult; the CLI prints one line per check and
exits nonzero if any fails.  Sample counts are sized for an interactive
run; the pytest suite runs the same invariants at full scale.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
import numpy as np

from staircase_gaps import distribution, enumeration, geometry, nondiff, section


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _tiling_check(n: int, count: int = 100_000, seed: int = 20240) -> CheckResult:
    regions = section.build_partition(n)
    c = math.cos(math.pi / n)
    rng = np.random.default_rng(seed)
    x = rng.uniform(0.0, 1.0, count)
    y = rng.uniform(1.0 - 2.0 * (1.0 + c), 1.0, count)
    keep = (x > 0.0) & (y > 1.0 - 2.0 * (1.0 + c) * x)
    x, y = x[keep], y[keep]
    hits = np.zeros(x.size, dtype=int)
    for region in regions:
        mask = np.ones(x.size, dtype=bool)
        for a, b, strict in region.constraints:
            s = a * x + b * y
            mask &= (s > 1.0) if strict else (s <= 1.0)
        hits += mask
    ok = bool(np.all(hits == 1))
    return CheckResult(
        "partition-tiling",
        ok,
        f"{x.size} points in omega1, all in exactly one cell" if ok
        else f"{np.count_nonzero(hits != 1)} points in != 1 cell",
    )


def _geometry_identities(n: int) -> CheckResult:
    tol = 1e-12
    worst = 0.0
    g = geometry.build_staircase(n)
    for i in range(1, n // 2):
        worst = max(worst, abs(g.v[i - 1] + g.v[i] - g.h[i]))
    ratio = 2.0 + 2.0 * math.cos(math.pi / n)
    for i in range((n - 1) // 2 - 1):
        worst = max(worst, abs((g.h[i] + g.h[i + 1]) / g.v[i] - ratio))
    for i in range(-2, n + 3):
        worst = max(worst, abs(geometry.edge_h(n, n - i) - geometry.edge_h(n, i - 1)))
        worst = max(worst, abs(geometry.edge_v(n, n - i) - geometry.edge_v(n, i - 2)))

    m = geometry.normalizing_matrix(n)
    s_gon = np.array([[1.0, -2.0 / math.tan(math.pi / (2 * n))], [0.0, 1.0]])
    r_gon = np.array(
        [
            [math.cos(math.pi / n), math.sin(math.pi / n)],
            [-math.sin(math.pi / n), math.cos(math.pi / n)],
        ]
    )
    gens = geometry.veech_generators(n)
    m_inv = np.linalg.inv(m)
    worst = max(worst, float(np.max(np.abs(m @ s_gon @ m_inv - gens.shear))))
    worst = max(worst, float(np.max(np.abs(m @ r_gon @ m_inv - gens.elliptic))))
    worst = max(worst, float(np.max(np.abs(gens.parabolic - np.array([[1.0, 0.0], [1.0, 1.0]])))))
    worst = max(worst, abs(float(np.linalg.det(gens.elliptic)) - 1.0))
    worst = max(worst, abs(float(np.trace(gens.elliptic)) - 2.0 * math.cos(math.pi / n)))
    ok = worst < tol
    return CheckResult("geometry-identities", ok, f"worst residual {worst:.2e}")


def _winner_orderings(n: int) -> CheckResult:
    lams = section.lambda_vectors(n)
    ratio = 2.0 + 2.0 * math.cos(math.pi / n)
    ok = True
    slopes = [b / a for a, b in lams[1:]]
    ok &= all(s1 > s2 + 1e-12 for s1, s2 in zip(slopes, slopes[1:]))
    # right-edge intercepts (1-a)/b strictly decreasing in the winner index,
    # i.e. (a-1)/b increasing (the y-slices at x = 1 stack downward)
    fvals = [(1.0 - a) / b for a, b in lams]
    ok &= all(f1 > f2 + 1e-12 for f1, f2 in zip(fvals, fvals[1:]))
    ok &= all(a / b < ratio for a, b in lams[1:])
    return CheckResult("winner-orderings", bool(ok), f"{n} winners ordered")


def _return_time_bound(n: int, per_region: int = 50, seed: int = 7) -> CheckResult:
    rng = np.random.default_rng(seed)
    worst = math.inf
    for i in range(1, n + 1):
        for p in section.sample_region_points(n, i, per_region, rng):
            worst = min(worst, section.return_time(n, p))
    ok = worst >= 1.0 - 1e-12
    return CheckResult("return-time-bound", ok, f"min sampled R = {worst:.6f}")


def _oracle_agreement(n: int, per_region: int = 40, seed: int = 99) -> CheckResult:
    x_max = 1.0 + geometry.edge_h(n, 1) + geometry.edge_h(n, math.ceil(n / 2))
    res = enumeration.orbit_enumerate(n, x_max, slope_max=4.0)
    cands = np.array(sorted(res.vectors) + [(0.0, 1.0)])
    lams = section.lambda_vectors(n)
    rng = np.random.default_rng(seed)
    bad = 0
    total = 0
    for i in range(1, n + 1):
        for edge in (False, True):
            for p in section.sample_region_points(n, i, per_region, rng, on_right_edge=edge):
                w = section.winner_oracle(n, p, cands)
                lam = lams[i - 1]
                total += 1
                if abs(w[0] - lam[0]) > 1e-8 or abs(w[1] - lam[1]) > 1e-8:
                    bad += 1
    return CheckResult(
        "winner-oracle-agreement",
        bad == 0,
        f"{total - bad}/{total} samples agree ({len(cands)} candidates)",
    )


def _covolume(n: int) -> CheckResult:
    val = distribution.covolume(n)
    ref = distribution.reference_covolume(n)
    rel = abs(val - ref) / ref
    return CheckResult("covolume", rel < 1e-5, f"computed {val:.8f}, rel err {rel:.2e}")


def _normalization(n: int) -> CheckResult:
    c1 = distribution.cdf(n, 1e6)
    pdf_low = distribution.pdf(n, 0.5)
    cdf_low = distribution.cdf(n, 1.0)
    ok = abs(c1 - 1.0) < 1e-6 and pdf_low == 0.0 and cdf_low == 0.0
    return CheckResult("support-normalization", ok, f"cdf(1e6) = {c1:.9f}")


def _pdf_consistency(n: int, count: int = 25, seed: int = 4) -> CheckResult:
    stamps = nondiff.dedupe_stamps(nondiff.crossing_stamps(n))
    rng = np.random.default_rng(seed)
    h = 1e-5
    worst = 0.0
    tried = 0
    while tried < count:
        t = rng.uniform(1.01, max(stamps) + 2.0)
        if min(abs(t - s) for s in stamps) < 4.0 * h:
            continue
        tried += 1
        fd = (distribution.cdf(n, t + h) - distribution.cdf(n, t - h)) / (2.0 * h)
        worst = max(worst, abs(distribution.pdf(n, t) - fd))
    return CheckResult("pdf-vs-cdf-derivative", worst < 1e-5, f"worst |diff| {worst:.2e}")


def _copies_identical(n: int) -> CheckResult:
    for t in (1.5, 2.0, 3.7, 5.0, 11.0):
        a = distribution.level_set_intervals(n, "omega2", t)
        b = distribution.level_set_intervals(n, 1, t)
        if a.intervals != b.intervals:
            return CheckResult("omega2-equals-P1", False, f"differ at t={t}")
    return CheckResult("omega2-equals-P1", True, "interval sets identical")


def _stamp_geometry(n: int) -> CheckResult:
    """Corner crossing times recomputed from the region geometry must match
    the closed-form stamps; paired crossings are simultaneous."""
    regions = section.build_partition(n)
    worst = 0.0
    for region in regions[2:-1]:
        i = region.index
        a, b = region.winner
        for name, t_ref in (("A", nondiff._stamp_m(n, i)),):
            if t_ref is None:
                continue
            x, y = region.corners["A"]
            t_geom = b / (x * (a * x + b * y))
            worst = max(worst, abs(t_geom - t_ref) / t_ref)
            xc, yc = region.corners["C"]
            t_c = b / (xc * (a * xc + b * yc))
            worst = max(worst, abs(t_c - t_ref) / t_ref)
        if "D" in region.corners and i <= n - 2:
            t_ref = nondiff._stamp_r(n, i)
            if t_ref is not None:
                x, y = region.corners["D"]
                t_geom = b / (x * (a * x + b * y))
                worst = max(worst, abs(t_geom - t_ref) / t_ref)
    ok = worst < 1e-10
    return CheckResult("stamp-geometry", ok, f"worst corner-time residual {worst:.2e}")


def _count_bounds(n: int) -> CheckResult:
    count = nondiff.count_nondiff(n)
    lo, hi = nondiff.bounds(n)
    ok = lo <= count <= hi
    return CheckResult("kink-count-bounds", ok, f"{lo:.1f} <= {count} <= {hi}")


def _enumeration_smoke(n: int, k: float = 12.0) -> CheckResult:
    res = enumeration.orbit_enumerate(n, k)
    keys = {(round(x, 8), round(y, 8)) for x, y in res.vectors}
    lams_in = all(
        (round(a, 8), round(b, 8)) in keys
        for a, b in section.lambda_vectors(n)
        if a > 0 and b <= a + 1e-9 and a <= k
    )
    gs = enumeration.slope_gaps(n, k)
    gaps_ok = bool(np.all(gs.gaps > 0.0))
    ks = enumeration.empirical_vs_analytic(n, k)
    ok = res.stable and lams_in and gaps_ok and ks < 0.3
    return CheckResult(
        "enumeration-smoke",
        ok,
        f"stable={res.stable}, winners-present={lams_in}, N({int(k)})={gs.count}, KS={ks:.3f}",
    )


def run_checks(n: int, fast: bool = True) -> list[CheckResult]:
    per_region = 40 if fast else 200
    checks: list[CheckResult] = [
        _geometry_identities(n),
        _tiling_check(n),
        _winner_orderings(n),
        _return_time_bound(n),
        _oracle_agreement(n, per_region=per_region),
        _covolume(n),
        _normalization(n),
        _pdf_consistency(n),
        _copies_identical(n),
        _stamp_geometry(n),
        _count_bounds(n),
        _enumeration_smoke(n, 12.0 if fast else 24.0),
    ]
    return checks
