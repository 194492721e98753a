"""Candidate non-differentiability times of the gap density.

The density can fail to be differentiable only when the level curve of the
return time crosses a cell boundary.  Per cell these crossing times are:

  * entry through the top-right corner B at t = b (the winner's height);
  * simultaneous first tangency with the bottom line(s);
  * passage through the side corners A and C (simultaneous);
  * passage through the bottom kink corner D, when the cell has one.

Times are evaluated from their closed trigonometric forms; validity (does
the crossing happen on the actual boundary segment, not just the supporting
line) is decided geometrically, which is exact for every (i, n).  A crossing
time is a true kink only when the one-sided derivatives of the density
actually differ there.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from staircase_gaps.distribution import pdf
from staircase_gaps.geometry import _check_n
from staircase_gaps.section import Region, build_partition

KIND_ENTRY = "entry-B"
KIND_LINE_PAIR = "lines-AD-CD"
KIND_CORNER_PAIR = "corners-A-C"
KIND_CORNER_D = "corner-D"
KIND_LINE_AC = "line-AC"

_INCREASING = {KIND_ENTRY, KIND_CORNER_D}


@dataclass(frozen=True)
class CrossingStamp:
    region: int
    time: float
    kind: str
    valid: bool
    duplicate: bool = False

    @property
    def increasing(self) -> bool:
        return self.kind in _INCREASING


def _stamp_k(n: int, i: int) -> float:
    return math.sin(math.pi * (i - 1) / n) / math.sin(math.pi / n)


def _stamp_l(n: int, i: int) -> float:
    return 4.0 * math.sin(i * math.pi / n) / math.sin(math.pi * (i - 1) / n)


def _stamp_m(n: int, i: int) -> float | None:
    denom = 1.0 / math.tan(math.pi / n) - 1.0 / math.tan(i * math.pi / (2 * n))
    if denom <= 1e-12:
        return None
    s = math.sin(math.pi / n)
    return math.sin(math.pi * (i - 1) / n) / (s * s) / denom


def _stamp_r(n: int, i: int) -> float | None:
    gap = math.sin(i * math.pi / n) - math.sin(math.pi / n)
    num = math.sin(math.pi * (i - 1) / n) * math.sin(math.pi * (i + 1) / n) ** 2
    if abs(num) < 1e-12 or abs(gap) < 1e-12:
        return None
    return num / (math.sin(math.pi / n) * gap * gap)


def _tangency_valid(region: Region, t: float) -> bool:
    """The curve touches each bottom line at x = -alpha / (2 (s + beta));
    the crossing is real when a touch point lies on its boundary segment."""
    s = region.winner[0] / region.winner[1]
    for piece in region.bottom:
        a2 = s + piece.line.beta
        if a2 >= 0.0:
            continue
        x_star = -piece.line.alpha / (2.0 * a2)
        if piece.x_lo - 1e-9 <= x_star <= piece.x_hi + 1e-9:
            return True
    return False


def crossing_stamps(n: int) -> list[CrossingStamp]:
    """All candidate non-differentiability times, with kinds and validity."""
    _check_n(n)
    regions = build_partition(n)
    dup_from = n // 2 + 2
    stamps: list[CrossingStamp] = []

    for region in regions:
        i = region.index
        if i == 1 or i == n:
            stamps.append(CrossingStamp(i, 1.0, KIND_ENTRY, valid=True))
            stamps.append(
                CrossingStamp(i, 4.0, KIND_LINE_AC, valid=_tangency_valid(region, 4.0))
            )
            continue

        duplicate = i >= dup_from
        stamps.append(
            CrossingStamp(i, _stamp_k(n, i), KIND_ENTRY, valid=True, duplicate=duplicate)
        )

        if i == n - 1:
            t_l = _stamp_l(n, i)  # equals 2 sec(pi/n): single hypotenuse
            stamps.append(
                CrossingStamp(i, t_l, KIND_LINE_AC, valid=_tangency_valid(region, t_l))
            )
            t_m = _stamp_m(n, i)
            if t_m is not None:
                stamps.append(CrossingStamp(i, t_m, KIND_CORNER_PAIR, valid=True))
            continue

        t_l = _stamp_l(n, i)
        stamps.append(
            CrossingStamp(i, t_l, KIND_LINE_PAIR, valid=_tangency_valid(region, t_l))
        )
        t_m = _stamp_m(n, i)
        if t_m is not None:
            stamps.append(CrossingStamp(i, t_m, KIND_CORNER_PAIR, valid=True))
        t_r = _stamp_r(n, i)
        if t_r is not None:
            stamps.append(CrossingStamp(i, t_r, KIND_CORNER_D, valid=True))

    return stamps


def dedupe_stamps(stamps: Iterable[CrossingStamp], tol: float = 1e-9) -> list[float]:
    """Unique valid crossing times, ascending."""
    times = sorted(s.time for s in stamps if s.valid)
    out: list[float] = []
    for t in times:
        if not out or t - out[-1] > tol:
            out.append(t)
    return out


def one_sided_derivatives(
    n: int, t: float, neighbors: tuple[float, float] = (math.inf, math.inf)
) -> tuple[float, float]:
    """Left and right derivatives of the density at t by second-order
    one-sided differences; the step shrinks below a fraction of the gap to
    the nearest other crossing time."""
    gap_l, gap_r = neighbors
    d_out = []
    for sgn, gap in ((-1.0, gap_l), (1.0, gap_r)):
        h = min(1e-6, gap / 8.0)
        h = max(h, 1e-10)
        base = t + sgn * 1e-9
        f0 = pdf(n, base)
        f1 = pdf(n, base + sgn * h)
        f2 = pdf(n, base + sgn * 2.0 * h)
        d_out.append(sgn * (-3.0 * f0 + 4.0 * f1 - f2) / (2.0 * h))
    return d_out[0], d_out[1]


def _is_kink(n: int, t: float, neighbors: tuple[float, float], deriv_tol: float) -> bool:
    d_l, d_r = one_sided_derivatives(n, t, neighbors)
    scale = max(1.0, abs(d_l), abs(d_r))
    return abs(d_r - d_l) > deriv_tol * scale


def count_nondiff(n: int, deriv_tol: float = 1e-4) -> int:
    """Number of distinct times where the density has a genuine derivative
    jump.  Crossing times that coincide exactly count once; simultaneous
    crossings that cancel are excluded automatically."""
    _check_n(n)
    times = dedupe_stamps(crossing_stamps(n))
    count = 0
    for j, t in enumerate(times):
        gap_l = t - times[j - 1] if j > 0 else math.inf
        gap_r = times[j + 1] - t if j + 1 < len(times) else math.inf
        if _is_kink(n, t, (gap_l, gap_r), deriv_tol):
            count += 1
    return count


def bounds(n: int) -> tuple[float, int]:
    """Linear lower and upper bounds on the kink count: (n/5 - 11, 2n + floor(n/2) + 1)."""
    if n < 3:
        raise ValueError("n must be >= 3")
    return (n / 5.0 - 11.0, 2 * n + n // 2 + 1)


def kink_scan(
    n: int,
    t_min: float = 0.999,
    t_max: float | None = None,
    step: float = 1e-3,
    refine_tol: float = 1e-8,
    deriv_tol: float = 1e-4,
) -> list[float]:
    """Blind scan for density kinks, independent of the stamp formulas.

    Grid second differences flag candidate cells against a rolling-median
    curvature baseline; each flagged cluster is narrowed to refine_tol by
    shrinking around the local second-difference peak, then confirmed with
    the one-sided derivative criterion.
    """
    _check_n(n)
    if t_max is None:
        t_max = max(dedupe_stamps(crossing_stamps(n))) + 1.0
    grid = np.arange(t_min, t_max, step)
    vals = np.array([pdf(n, t) for t in grid])
    slopes = np.diff(vals) / step
    jumps = np.diff(slopes)
    mags = np.abs(jumps)

    # rolling-median baseline separates genuine slope jumps from smooth
    # curvature, which scales with the step
    win = 51
    padded = np.pad(mags, win // 2, mode="median")
    baseline = np.array(
        [np.median(padded[j : j + win]) for j in range(mags.size)]
    )
    flagged = mags > np.maximum(10.0 * baseline, 1e-7)

    kinks: list[float] = []
    j = 0
    while j < flagged.size:
        if not flagged[j]:
            j += 1
            continue
        j_end = j
        while j_end + 1 < flagged.size and flagged[j_end + 1]:
            j_end += 1
        peak = j + int(np.argmax(mags[j : j_end + 1]))
        lo, hi = grid[peak], grid[peak + 2]
        t_star = _refine_kink(n, lo, hi, refine_tol)
        if _is_kink(n, t_star, (math.inf, math.inf), deriv_tol):
            if not kinks or t_star - kinks[-1] > 10.0 * refine_tol:
                kinks.append(t_star)
        j = j_end + 1
    return kinks


def _refine_kink(n: int, lo: float, hi: float, tol: float) -> float:
    while hi - lo > tol:
        delta = (hi - lo) / 4.0
        nodes = (lo + delta, (lo + hi) / 2.0, hi - delta)
        curv = [
            abs(pdf(n, u - delta) - 2.0 * pdf(n, u) + pdf(n, u + delta))
            for u in nodes
        ]
        best = nodes[int(np.argmax(curv))]
        lo, hi = best - delta, best + delta
    return (lo + hi) / 2.0
