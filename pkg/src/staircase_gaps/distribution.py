"""Limiting slope gap distribution via exact sublevel areas of the return time.

For a cell with winner (a, b) the sublevel set {R < t} is the part of the
cell above the curve y*(x) = 1/(t x) - (a/b) x.  Two simplifications make
everything closed form:

  * the cell's top boundary is the winner's own line a x + b y = 1, so the
    curve drops below the top exactly at x = b / t;
  * against a bottom line y = alpha + beta x the sign of y* - y is decided
    by a single quadratic (a/b + beta) x^2 + alpha x - 1/t, whose two roots
    bracket the sub-line stretch.

The CDF is a sum of log and polynomial antiderivatives; the PDF is the exact
area sweep rate sum(ln(x_hi/x_lo)) / t^2 over the x-intervals where the
curve runs strictly inside a cell.  The measure weights omega2 and P_1
(the same triangle in the plane) separately, with normalization
Z = 3/2 + cos(pi/n).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np
from scipy.integrate import quad
from scipy.optimize import minimize_scalar

from staircase_gaps.geometry import _check_n
from staircase_gaps.section import BottomPiece, Region, build_partition

_MERGE_TOL = 1e-12
_TANGENT_CLAMP = 1e-12

OMEGA2_LABEL = "omega2"


@dataclass(frozen=True)
class LevelIntervals:
    """x-intervals where the level curve of R at threshold t runs inside a cell."""

    t: float
    region: int | str
    intervals: tuple[tuple[float, float], ...]


@dataclass(frozen=True)
class DistributionTable:
    n: int
    t: np.ndarray
    pdf: np.ndarray
    cdf: np.ndarray
    normalization: float


@lru_cache(maxsize=None)
def _cells(n: int) -> tuple[tuple[str, Region], ...]:
    """The omega2 copy reuses the P_1 cell object: same triangle, same
    return time, counted twice by the measure."""
    regions = build_partition(n)
    cells = [(OMEGA2_LABEL, regions[0])]
    cells.extend((f"P{r.index}", r) for r in regions)
    return tuple(cells)


def normalization(n: int) -> float:
    """Total Lebesgue area of both section components."""
    _check_n(n)
    return 1.5 + math.cos(math.pi / n)


def _bottom_roots(s: float, piece: BottomPiece, t: float) -> tuple[float, float] | None:
    """Roots of (s + beta) x^2 + alpha x - 1/t: the curve is below the
    bottom line exactly between them.  None when the curve never reaches
    the line (negative discriminant beyond the tangency clamp)."""
    alpha, beta = piece.line
    a2 = s + beta
    disc = alpha * alpha + 4.0 * a2 / t
    if disc < -_TANGENT_CLAMP:
        return None
    disc = max(disc, 0.0)
    # a2 < 0 and alpha > 0 for every bottom line, so this form is stable.
    q = -(alpha + math.sqrt(disc)) / 2.0
    r1 = q / a2
    r2 = (-1.0 / t) / q
    return (r1, r2) if r1 <= r2 else (r2, r1)


def _segments(region: Region, t: float):
    """Yield (x0, x1, inside) spans over the swept part of the cell.

    inside=True means the curve runs between bottom and top (partial
    columns); inside=False means the curve lies below the bottom line and
    the full column counts.
    """
    b = region.winner[1]
    lo = max(region.x_min, b / t)
    if lo >= 1.0:
        return
    s = region.winner[0] / b
    for piece in region.bottom:
        u = max(piece.x_lo, lo)
        w = min(piece.x_hi, 1.0)
        if u >= w:
            continue
        roots = _bottom_roots(s, piece, t)
        if roots is None:
            yield (u, w, True)
            continue
        r_lo, r_hi = roots
        if r_lo > u:
            yield (u, min(r_lo, w), True)
        mid_lo, mid_hi = max(r_lo, u), min(r_hi, w)
        if mid_lo < mid_hi:
            yield (mid_lo, mid_hi, False)
        if r_hi < w:
            yield (max(r_hi, u), w, True)


def level_set_intervals(n: int, region: int | str, t: float) -> LevelIntervals:
    """Inside intervals for one cell; touching intervals are merged, so a
    tangency point appears interior to a single interval."""
    _check_n(n)
    if t <= 0.0:
        raise ValueError("threshold t must be positive")
    cell = _lookup_cell(n, region)
    merged: list[list[float]] = []
    for x0, x1, inside in _segments(cell, t):
        if not inside:
            continue
        if merged and x0 - merged[-1][1] <= _MERGE_TOL:
            merged[-1][1] = x1
        else:
            merged.append([x0, x1])
    return LevelIntervals(
        t=t, region=region, intervals=tuple((a, b) for a, b in merged)
    )


def _lookup_cell(n: int, region: int | str) -> Region:
    regions = build_partition(n)
    if region == OMEGA2_LABEL or region == 0:
        return regions[0]
    if isinstance(region, int) and 1 <= region <= n:
        return regions[region - 1]
    raise ValueError(f"unknown region {region!r} for n={n}")


def _sublevel_area(region: Region, t: float) -> float:
    b = region.winner[1]
    area = 0.0
    for x0, x1, inside in _segments(region, t):
        if inside:
            # top minus curve; the x-linear parts cancel since the top's
            # slope is exactly -a/b.
            area += (x1 - x0) / b - math.log(x1 / x0) / t
        else:
            piece = next(p for p in region.bottom if x0 >= p.x_lo - 1e-15 and x1 <= p.x_hi + 1e-15)
            area += (region.top.alpha - piece.line.alpha) * (x1 - x0)
            area += (region.top.beta - piece.line.beta) * (x1 * x1 - x0 * x0) / 2.0
    return area


def cdf(n: int, t: float) -> float:
    """P(gap < t): normalized area of {R < t} over both section components."""
    _check_n(n)
    if t <= 1.0:
        # R >= 1 everywhere: the curve only drops below a cell's top at
        # x = b/t >= 1, so the sublevel set is empty.
        return 0.0
    total = sum(_sublevel_area(cell, t) for _, cell in _cells(n))
    return total / normalization(n)


def pdf(n: int, t: float) -> float:
    """Density of the limiting gap law: the exact area sweep rate.

    The density is continuous (kinks only show in its derivative), so no
    one-sided variants are needed.
    """
    _check_n(n)
    if t <= 1.0:
        return 0.0
    acc = 0.0
    for _, cell in _cells(n):
        for x0, x1, inside in _segments(cell, t):
            if inside:
                acc += math.log(x1 / x0)
    return acc / (t * t * normalization(n))


def covolume(n: int, tol: float = 1e-8) -> float:
    """Integral of R over the section, which recovers the Haar covolume of
    the Veech group; the reference value is (n-1) pi^2 / n.

    Each cell reduces to one-dimensional integrals of -ln(c0 + c1 x)/x per
    bottom piece (the top boundary contributes ln 1 = 0), evaluated by
    adaptive quadrature; the integrable endpoint log singularities are
    handled by the QAGS scheme.
    """
    _check_n(n)
    total = 0.0
    err = 0.0
    for _, cell in _cells(n):
        a, b = cell.winner
        for piece in cell.bottom:
            c0 = b * piece.line.alpha
            c1 = a + b * piece.line.beta

            def integrand(x: float, c0: float = c0, c1: float = c1) -> float:
                return -math.log(c0 + c1 * x) / x

            val, est = quad(integrand, piece.x_lo, piece.x_hi, limit=200,
                            epsabs=tol * 1e-3, epsrel=1e-12)
            total += val
            err += est
    if err > tol:
        raise RuntimeError(
            f"covolume quadrature did not reach tolerance {tol:g}; "
            f"achieved {err:g}"
        )
    return total


def reference_covolume(n: int) -> float:
    _check_n(n)
    return (n - 1) * math.pi * math.pi / n


def tail_estimate(n: int, T: float, samples: int = 33) -> float:
    """Average of t^2 (1 - cdf(t)) over t in [T, 2T].

    The distribution has a quadratic tail: the survival function decays like
    const / t^2 (the density itself decays cubically), so this estimate
    stabilizes under successive doublings of T.
    """
    _check_n(n)
    if T <= 1.0:
        raise ValueError("T must exceed the support infimum 1")
    ts = np.linspace(T, 2.0 * T, samples)
    return float(np.mean([t * t * (1.0 - cdf(n, t)) for t in ts]))


def _stamp_times(n: int) -> list[float]:
    # local import: nondiff depends on this module for derivatives
    from staircase_gaps.nondiff import crossing_stamps, dedupe_stamps

    return dedupe_stamps(crossing_stamps(n))


def find_local_extrema(
    n: int,
    t_lo: float,
    t_hi: float,
    grid_size: int = 4000,
) -> list[tuple[float, float, str]]:
    """Local extrema of the density on (t_lo, t_hi).

    Brackets come from sign changes of finite-difference slopes on a grid
    refined at the crossing stamps (extrema can sit exactly at kinks); each
    bracket is polished to t-resolution 1e-9.
    """
    _check_n(n)
    if not (1.0 <= t_lo < t_hi):
        raise ValueError("need 1 <= t_lo < t_hi")
    ts = set(np.linspace(t_lo, t_hi, grid_size))
    for stamp in _stamp_times(n):
        for off in (-1e-6, 0.0, 1e-6):
            u = stamp + off
            if t_lo < u < t_hi:
                ts.add(u)
    grid = np.array(sorted(ts))
    vals = np.array([pdf(n, t) for t in grid])
    slopes = np.diff(vals) / np.diff(grid)

    out: list[tuple[float, float, str]] = []
    prev_sign = 0
    prev_idx = 0
    for j, d in enumerate(slopes):
        sign = 1 if d > 1e-13 else (-1 if d < -1e-13 else 0)
        if sign == 0:
            continue
        if prev_sign != 0 and sign != prev_sign:
            bracket = (grid[prev_idx], grid[j + 1])
            kind = "max" if prev_sign > 0 else "min"
            t_star = _polish_extremum(n, bracket, kind)
            f_star = pdf(n, t_star)
            if not out or abs(t_star - out[-1][0]) > 1e-7:
                out.append((t_star, f_star, kind))
        prev_sign = sign
        prev_idx = j
    return out


def _polish_extremum(n: int, bracket: tuple[float, float], kind: str) -> float:
    sgn = -1.0 if kind == "max" else 1.0
    res = minimize_scalar(
        lambda t: sgn * pdf(n, t),
        bounds=bracket,
        method="bounded",
        options={"xatol": 1e-9},
    )
    return float(res.x)


def sample_distribution(
    n: int,
    t_grid: Sequence[float] | np.ndarray,
    refine_stamps: bool = False,
) -> DistributionTable:
    """Tabulate (t, pdf, cdf) over a grid; with refine_stamps the grid gains
    points straddling every crossing stamp so kinks are resolved."""
    _check_n(n)
    grid = np.asarray(t_grid, dtype=float)
    if grid.size == 0 or np.any(grid <= 0.0) or np.any(np.diff(grid) < 0.0):
        raise ValueError("t grid must be sorted and positive")
    if refine_stamps:
        lo, hi = grid[0], grid[-1]
        extra = []
        for stamp in _stamp_times(n):
            for off in (-1e-6, 0.0, 1e-6):
                u = stamp + off
                if lo < u < hi:
                    extra.append(u)
        grid = np.unique(np.concatenate([grid, np.array(extra)]))
    p = np.array([pdf(n, t) for t in grid])
    c = np.array([cdf(n, t) for t in grid])
    return DistributionTable(n=n, t=grid, pdf=p, cdf=c, normalization=normalization(n))
