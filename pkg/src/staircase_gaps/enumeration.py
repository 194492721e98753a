"""Brute-force oracle: saddle connection vectors by Veech group orbits.

Every holonomy vector lies in the group orbit of the seeds (1, 0) and
(0, 1).  Because the group contains the unit horocycle step (slope + 1),
the orbit is closed under (x, y) -> (x, y + x); the search therefore runs
over period-reduced states (x, y mod x) and, per generator, enumerates all
horocycle shifts whose image stays under the working cap on |x|.  This
keeps every intermediate state bounded by a small multiple of the window
width, which a plain norm-pruned matrix walk does not (winners reachable
only through long excursions were observed to be missed for n = 5).

Sufficiency of the cap is certified empirically: the returned set is
flagged stable when it stopped changing at least two breadth levels before
the search ended, and the suite cross-checks the vectors against the
analytic winners and the limiting gap law.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from staircase_gaps.distribution import cdf
from staircase_gaps.geometry import Vec, _check_n, veech_generators

_KEY_SCALE = 1e9  # dedup resolution: distinct words reproduce a vector with ~1e-12 drift

Mat = tuple[float, float, float, float]


@dataclass(frozen=True)
class EnumerationResult:
    vectors: frozenset[Vec]
    stable: bool
    stable_depth: int | None
    depth_reached: int


@dataclass(frozen=True)
class GapSample:
    n: int
    k: float
    vectors: tuple[Vec, ...]
    slopes: np.ndarray  # sorted, in [0, 1)
    gaps: np.ndarray    # renormalized by k^2, includes the wraparound gap
    stable: bool

    @property
    def count(self) -> int:
        """N(k): number of slopes (and gaps) in one period."""
        return int(self.slopes.size)


@lru_cache(maxsize=None)
def _generators(n: int) -> tuple[Mat, ...]:
    gens = veech_generators(n)
    out: list[Mat] = []
    for m in (gens.shear, gens.elliptic):
        a, b, c, d = (float(v) for v in m.ravel())
        out.append((a, b, c, d))
        out.append((d, -b, -c, a))  # inverse, determinant 1
    return tuple(out)


def _reduce(x: float, y: float) -> Vec:
    """Sign-normalize and cut the slope to [0, 1)."""
    if x < 0.0:
        x, y = -x, -y
    y = math.fmod(y, x)
    if y < 0.0:
        y += x
    scale = max(1.0, x)
    if y < 1e-9 * scale or x - y < 1e-9 * scale:
        y = 0.0
    return x, y


def orbit_enumerate(
    n: int,
    x_max: float,
    max_depth: int = 10_000,
    prune_norm: float | None = None,
    slope_max: float = 1.0,
) -> EnumerationResult:
    """Orbit vectors with 0 < x <= x_max and slope in [0, slope_max].

    prune_norm caps |x| of intermediate period-reduced states (default
    4 * x_max + 16).  The result is flagged unstable when the window set was
    still changing within two breadth levels of where the search stopped.
    """
    _check_n(n)
    if x_max <= 0.0:
        raise ValueError("x_max must be positive")
    if max_depth < 1:
        raise ValueError("max_depth must be >= 1")
    x_cap = prune_norm if prune_norm is not None else 4.0 * max(x_max, 1.0) + 16.0

    gens = _generators(n)
    states: dict[tuple[int, int], Vec] = {}
    frontier: list[Vec] = []

    def add(x: float, y: float) -> bool:
        if abs(x) < 1e-9:
            return False
        x, y = _reduce(x, y)
        if x > x_cap:
            return False
        key = (round(x * _KEY_SCALE), round(y * _KEY_SCALE))
        if key in states:
            return False
        states[key] = (x, y)
        frontier.append((x, y))
        return x <= x_max + 1e-9

    add(1.0, 0.0)
    for a, b, c, d in gens:
        # images of the vertical seed (0, 1)
        add(b, d)

    last_change = 0
    depth = 0
    while frontier and depth < max_depth:
        depth += 1
        current, frontier = frontier, []
        changed = False
        for x, y in current:
            for a, b, c, d in gens:
                # image of the shifted state (x, y + j x) has first
                # component (a x + b y) + j b x; enumerate every shift
                # landing under the cap
                base = a * x + b * y
                step = b * x
                lo = math.floor((-x_cap - base) / step) - 1
                hi = math.ceil((x_cap - base) / step) + 1
                if lo > hi:
                    lo, hi = hi, lo
                for j in range(int(lo), int(hi) + 1):
                    xp = base + j * step
                    if not (1e-9 < abs(xp) <= x_cap):
                        continue
                    yp = c * x + d * (y + j * x)
                    if add(xp, yp):
                        changed = True
        if changed:
            last_change = depth

    window: list[Vec] = []
    j_hi = int(math.floor(slope_max + 1e-9))
    for x, y in states.values():
        if x > x_max + 1e-9:
            continue
        for j in range(0, j_hi + 1):
            yy = y + j * x
            if yy <= slope_max * x + 1e-9:
                window.append((x, yy))

    stable = depth - last_change >= 2
    return EnumerationResult(
        vectors=frozenset(window),
        stable=stable,
        stable_depth=last_change if stable else None,
        depth_reached=depth,
    )


def slope_gaps(
    n: int,
    k: float,
    max_depth: int = 10_000,
    prune_norm: float | None = None,
) -> GapSample:
    """Sorted slope set in [0, 1) for the strip of width k, with the
    k^2-renormalized consecutive gaps (wraparound included)."""
    _check_n(n)
    if k < 1.0:
        raise ValueError("strip width k must be >= 1")
    res = orbit_enumerate(n, k, max_depth=max_depth, prune_norm=prune_norm)
    raw = np.array([y / x for x, y in res.vectors])
    slopes = np.unique(np.round(raw % 1.0, 9))
    diffs = np.diff(slopes)
    wrap = slopes[0] + 1.0 - slopes[-1]
    gaps = np.concatenate([diffs, [wrap]]) * (k * k)
    return GapSample(
        n=n,
        k=k,
        vectors=tuple(sorted(res.vectors)),
        slopes=slopes,
        gaps=gaps,
        stable=res.stable,
    )


def empirical_vs_analytic(
    n: int,
    k: float,
    max_depth: int = 10_000,
    prune_norm: float | None = None,
) -> float:
    """Kolmogorov-Smirnov distance between the renormalized gap sample and
    the analytic CDF."""
    sample = slope_gaps(n, k, max_depth=max_depth, prune_norm=prune_norm)
    gaps = np.sort(sample.gaps)
    m = gaps.size
    f = np.array([cdf(n, float(g)) for g in gaps])
    i = np.arange(1, m + 1)
    return float(max(np.max(i / m - f), np.max(f - (i - 1) / m)))
