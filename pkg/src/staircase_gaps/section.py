"""Poincare section of the horocycle flow and its return-time partition.

The section has two triangular components in (x, y) coordinates:

    omega1 = {0 < x <= 1,  1 - 2(1+cos(pi/n)) x < y <= 1}
    omega2 = {0 < x <= 1,  1 - x < y <= 1}

omega1 splits into n convex cells P_1..P_n, each carrying a winning holonomy
vector (a, b); the return time at (x, y) is b / (x (a x + b y)).  Cell
membership follows the printed strict/non-strict inequalities verbatim, with
no epsilon, so the cells tile omega1 exactly.

Each cell is stored with its sweep geometry as well: a single top line
(always the winner's own line a x + b y = 1) and one or two bottom lines,
over x in [x_min, 1].  Corner names: A is the left pinch, B the top-right
corner, C the bottom-right corner, D the kink between the two bottom lines
(absent for triangular cells).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple, Sequence

import numpy as np

from staircase_gaps.geometry import Vec, _check_n, edge_h, edge_v


class SectionComponent(enum.Enum):
    OMEGA1 = "omega1"
    OMEGA2 = "omega2"


@dataclass(frozen=True)
class SectionPoint:
    component: SectionComponent
    x: float
    y: float


#: classify() result for points of the omega2 component
OMEGA2_CLASS = 0


class Constraint(NamedTuple):
    """Half-plane a*x + b*y > 1 when strict, a*x + b*y <= 1 otherwise."""

    a: float
    b: float
    strict: bool

    def holds(self, x: float, y: float) -> bool:
        s = self.a * x + self.b * y
        return s > 1.0 if self.strict else s <= 1.0


class Line(NamedTuple):
    """y = alpha + beta * x."""

    alpha: float
    beta: float

    def __call__(self, x: float) -> float:
        return self.alpha + self.beta * x


class BottomPiece(NamedTuple):
    line: Line
    x_lo: float
    x_hi: float


@dataclass(frozen=True)
class Region:
    """One cell of the omega1 partition with its winning vector."""

    index: int
    constraints: tuple[Constraint, ...]
    winner: Vec
    x_min: float
    top: Line
    bottom: tuple[BottomPiece, ...]
    corners: dict[str, Vec]

    def contains(self, x: float, y: float) -> bool:
        return all(c.holds(x, y) for c in self.constraints)

    def bottom_at(self, x: float) -> float:
        for piece in self.bottom:
            if x <= piece.x_hi:
                return piece.line(x)
        return self.bottom[-1].line(x)

    def area(self) -> float:
        total = 0.0
        for piece in self.bottom:
            u, w = piece.x_lo, piece.x_hi
            total += (self.top.alpha - piece.line.alpha) * (w - u)
            total += (self.top.beta - piece.line.beta) * (w * w - u * u) / 2.0
        return total


def lambda_vectors(n: int) -> list[Vec]:
    """Winning vectors in region order: vertical, square diagonals, then
    the wide-rectangle diagonals (extended edge formulas handle both halves)."""
    _check_n(n)
    out: list[Vec] = [(0.0, 1.0)]
    for i in range(2, n):
        out.append((edge_h(n, i - 2), edge_v(n, i - 2)))
    out.append((edge_h(n, 1), edge_v(n, 0)))
    return out


def section_contains(n: int, p: SectionPoint) -> bool:
    """Membership with the defining inequalities, strict sides included."""
    _check_n(n)
    if not (0.0 < p.x <= 1.0):
        return False
    if p.component is SectionComponent.OMEGA2:
        lower = 1.0 - p.x
    else:
        lower = 1.0 - 2.0 * (1.0 + math.cos(math.pi / n)) * p.x
    return lower < p.y <= 1.0


@lru_cache(maxsize=None)
def build_partition(n: int) -> tuple[Region, ...]:
    _check_n(n)
    h1 = edge_h(n, 1)
    c = math.cos(math.pi / n)
    regions: list[Region] = []

    # P_1: above the line x + y = 1, capped by y = 1.
    regions.append(
        Region(
            index=1,
            constraints=(Constraint(1.0, 1.0, strict=True),),
            winner=(0.0, 1.0),
            x_min=0.0,
            top=Line(1.0, 0.0),
            bottom=(BottomPiece(Line(1.0, -1.0), 0.0, 1.0),),
            corners={"A": (0.0, 1.0), "B": (1.0, 1.0), "C": (1.0, 0.0)},
        )
    )

    for i in range(2, n):
        a, b = edge_h(n, i - 2), edge_v(n, i - 2)
        a_next, b_next = edge_h(n, i - 1), edge_v(n, i - 1)
        constraints = (
            Constraint(a, b, strict=False),
            Constraint(a_next, b_next, strict=True),
            Constraint(h1, 1.0, strict=True),
        )
        top = Line(1.0 / b, -a / b)
        ad = Line(1.0, -h1)
        x_a = (1.0 - b) / (a - h1 * b)
        corner_a = (x_a, ad(x_a))
        corner_b = (1.0, top(1.0))
        if i == n - 1:
            # The two lower constraints coincide: triangular cell.
            bottom = (BottomPiece(ad, x_a, 1.0),)
            corners = {"A": corner_a, "B": corner_b, "C": (1.0, ad(1.0))}
        else:
            cd = Line(1.0 / b_next, -a_next / b_next)
            x_d = (1.0 - b_next) / (a_next - h1 * b_next)
            bottom = (BottomPiece(ad, x_a, x_d), BottomPiece(cd, x_d, 1.0))
            corners = {
                "A": corner_a,
                "B": corner_b,
                "C": (1.0, cd(1.0)),
                "D": (x_d, ad(x_d)),
            }
        regions.append(
            Region(
                index=i,
                constraints=constraints,
                winner=(a, b),
                x_min=x_a,
                top=top,
                bottom=bottom,
                corners=corners,
            )
        )

    # P_n: below the line h1 x + y = 1, above the lower edge of omega1.
    lower = Line(1.0, -2.0 * (1.0 + c))
    regions.append(
        Region(
            index=n,
            constraints=(Constraint(h1, 1.0, strict=False),),
            winner=(h1, edge_v(n, 0)),
            x_min=0.0,
            top=Line(1.0, -h1),
            bottom=(BottomPiece(lower, 0.0, 1.0),),
            corners={"A": (0.0, 1.0), "B": (1.0, 1.0 - h1), "C": (1.0, lower(1.0))},
        )
    )
    return tuple(regions)


def classify(n: int, p: SectionPoint) -> int:
    """Region index of a section point; OMEGA2_CLASS for the omega2 copy.

    Scans i = n down to 1 and returns the first cell whose constraint set
    accepts the point, which realizes the maximal-index characterization of
    the winner.
    """
    if not section_contains(n, p):
        raise ValueError(f"point {p} is not in the section for n={n}")
    if p.component is SectionComponent.OMEGA2:
        return OMEGA2_CLASS
    for region in reversed(build_partition(n)):
        if region.contains(p.x, p.y):
            return region.index
    raise AssertionError("partition failed to cover a section point")


def winner_at(n: int, p: SectionPoint) -> Vec:
    idx = classify(n, p)
    if idx == OMEGA2_CLASS:
        return (0.0, 1.0)
    return build_partition(n)[idx - 1].winner


def return_time(n: int, p: SectionPoint) -> float:
    """Horocycle first-return time b / (x (a x + b y)) with (a, b) the winner."""
    a, b = winner_at(n, p)
    return b / (p.x * (a * p.x + b * p.y))


def winner_oracle(
    n: int, p: SectionPoint, candidates: Sequence[Vec] | np.ndarray
) -> Vec:
    """Brute-force winner: the candidate whose image has the least slope.

    A candidate (a, b) qualifies when 0 < a x + b y <= 1 and the image slope
    b / (x (a x + b y)) is positive.  Parallel candidates give exactly equal
    slopes, so ties are broken toward the shortest vector (smallest b, then
    smallest a).
    """
    if not section_contains(n, p):
        raise ValueError(f"point {p} is not in the section for n={n}")
    arr = np.asarray(candidates, dtype=float).reshape(-1, 2)
    a, b = arr[:, 0], arr[:, 1]
    w = a * p.x + b * p.y
    ok = (w > 0.0) & (w <= 1.0) & (b > 0.0)
    if not ok.any():
        raise ValueError("no qualifying candidate; candidate set too small")
    slopes = b[ok] / (p.x * w[ok])
    smin = slopes.min()
    near = np.flatnonzero(slopes <= smin * (1.0 + 1e-9))
    pool = arr[ok][near]
    best = near[np.lexsort((pool[:, 0], pool[:, 1]))[0]]
    va, vb = arr[ok][best]
    return (float(va), float(vb))


def sample_region_points(
    n: int,
    index: int,
    count: int,
    rng: np.random.Generator,
    on_right_edge: bool = False,
) -> list[SectionPoint]:
    """Interior points of cell P_index, optionally restricted to x = 1."""
    region = build_partition(n)[index - 1]
    pts: list[SectionPoint] = []
    for _ in range(count):
        if on_right_edge:
            x = 1.0
        else:
            u = rng.uniform(0.02, 0.98)
            x = region.x_min + u * (1.0 - region.x_min)
        lo, hi = region.bottom_at(x), region.top(x)
        y = lo + rng.uniform(0.02, 0.98) * (hi - lo)
        pts.append(SectionPoint(SectionComponent.OMEGA1, x, y))
    return pts
