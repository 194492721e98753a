"""Closed-form staircase geometry of the normalized 2n-gon.

The regular 2n-gon is sheared and rescaled into a right-angled staircase of
rectangles.  Horizontal edge lengths are

    h_i = csc(pi/(2n)) * sin(pi*(1+2i)/(2n)),

vertical edge lengths are

    v_j = csc(pi/n) * sin(pi*(1+j)/n).

Both closed forms are valid for every integer index, which is needed because
the section partition addresses edges past the geometric range (the extended
values repeat by the symmetries h(n-i) = h(i-1), v(n-i) = v(i-2)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

import numpy as np

Vec = tuple[float, float]


def _check_n(n: int) -> None:
    if not isinstance(n, (int, np.integer)):
        raise TypeError(f"n must be an integer, got {type(n).__name__}")
    if n < 3:
        raise ValueError(f"n must be >= 3, got {n} (the n=2 square case is excluded)")


def edge_h(n: int, i: int) -> float:
    """Horizontal edge length h_i, defined for any integer i."""
    _check_n(n)
    return math.sin(math.pi * (1 + 2 * i) / (2 * n)) / math.sin(math.pi / (2 * n))


def edge_v(n: int, j: int) -> float:
    """Vertical edge length v_j, defined for any integer j."""
    _check_n(n)
    return math.sin(math.pi * (1 + j) / n) / math.sin(math.pi / n)


@dataclass(frozen=True)
class StaircaseGeometry:
    """Edge lengths and cumulative vertex coordinates of the staircase.

    ``left_vertices[k]`` is the lower-left corner of the k-th square column
    (the concave vertices along the upper-left boundary); ``right_vertices[k]``
    is the matching concave vertex on the lower-right boundary.  All
    coordinates are partial sums of the h and v sequences with
    ``left_vertices[0] == (0, 0)``.
    """

    n: int
    h: tuple[float, ...]
    v: tuple[float, ...]
    left_vertices: tuple[Vec, ...]
    right_vertices: tuple[Vec, ...]

    @property
    def aspect_ratio(self) -> float:
        """Common aspect ratio (h_i + h_{i+1}) / v_i of the merged rectangles."""
        return 2.0 + 2.0 * math.cos(math.pi / self.n)


@lru_cache(maxsize=None)
def build_staircase(n: int) -> StaircaseGeometry:
    """Assemble the staircase for a given n (n >= 3)."""
    _check_n(n)
    h = tuple(edge_h(n, i) for i in range(math.ceil(n / 2)))
    v = tuple(edge_v(n, j) for j in range(n // 2))
    cum_h = [0.0]
    for length in h:
        cum_h.append(cum_h[-1] + length)
    cum_v = [0.0]
    for length in v:
        cum_v.append(cum_v[-1] + length)
    left = tuple((cum_h[k], cum_v[k]) for k in range(n // 2 + 1))
    right = tuple((cum_h[k + 1], cum_v[k]) for k in range(len(h)))
    return StaircaseGeometry(n=n, h=h, v=v, left_vertices=left, right_vertices=right)


def normalizing_matrix(n: int) -> np.ndarray:
    """Matrix taking the regular 2n-gon to the staircase.

    A shear kills the pi/(2n)-direction cylinder slope, then a vertical
    rescale makes the shortest vertical edge length 1.
    """
    _check_n(n)
    shear = -1.0 / math.tan(math.pi / (2 * n))
    scale = 1.0 / math.cos((n - 2) * math.pi / (2 * n))
    return np.array([[1.0, shear], [0.0, scale]])


class VeechGenerators(NamedTuple):
    shear: np.ndarray      # parabolic generator fixing the horizontal direction
    elliptic: np.ndarray   # conjugated rotation generator
    parabolic: np.ndarray  # second-cusp parabolic, equals [[1,0],[1,1]]


def veech_generators(n: int) -> VeechGenerators:
    """Generators of the Veech group of the staircase surface.

    The second parabolic is computed from the word (elliptic^(n-1) shear)^-1
    rather than hard-coded, so tests can confirm the word identity collapses
    to [[1, 0], [1, 1]].  The elliptic generator is conjugate to an exact
    rotation, so its power is evaluated in closed form; naive repeated
    squaring drifts to ~1e-9 by n = 200.
    """
    _check_n(n)
    c = math.cos(math.pi / n)
    s = math.sin(math.pi / n)
    shear = np.array([[1.0, -2.0 * (1.0 + c)], [0.0, 1.0]])
    elliptic = np.array([[1.0 + 2.0 * c, 2.0 * (1.0 + c)], [-1.0, -1.0]])
    m = normalizing_matrix(n)
    m_inv = np.linalg.inv(m)
    rot_power = np.array([[-c, s], [-s, -c]])  # rotation by (n-1) pi / n
    shear_gon = np.array([[1.0, -2.0 / math.tan(math.pi / (2 * n))], [0.0, 1.0]])
    word = m @ (rot_power @ shear_gon) @ m_inv
    parabolic = np.linalg.inv(word)
    return VeechGenerators(shear=shear, elliptic=elliptic, parabolic=parabolic)


def horocycle(s: float) -> np.ndarray:
    """Horocycle flow element: subtracts s from every slope."""
    return np.array([[1.0, 0.0], [-s, 1.0]])
