"""Slope gap distributions of saddle connections on regular 2n-gons.

The regular 2n-gon is normalized to a right-angled staircase surface whose
Veech group has two cusps.  The limiting distribution of renormalized slope
gaps is the law of the horocycle return time over a two-triangle Poincare
section, which this package computes in closed form (geometry, section
partition, CDF/PDF, covolume, non-differentiability analysis) and checks
against a brute-force orbit enumeration.
"""

from staircase_gaps.geometry import (
    StaircaseGeometry,
    build_staircase,
    edge_h,
    edge_v,
    normalizing_matrix,
    veech_generators,
)
from staircase_gaps.section import (
    Region,
    SectionPoint,
    build_partition,
    classify,
    lambda_vectors,
    return_time,
    section_contains,
    winner_oracle,
)
from staircase_gaps.distribution import (
    cdf,
    covolume,
    find_local_extrema,
    level_set_intervals,
    pdf,
    sample_distribution,
    tail_estimate,
)
from staircase_gaps.nondiff import bounds, count_nondiff, crossing_stamps, dedupe_stamps
from staircase_gaps.enumeration import empirical_vs_analytic, orbit_enumerate, slope_gaps

__version__ = "0.1.0"

__all__ = [
    "StaircaseGeometry",
    "build_staircase",
    "edge_h",
    "edge_v",
    "normalizing_matrix",
    "veech_generators",
    "Region",
    "SectionPoint",
    "build_partition",
    "classify",
    "lambda_vectors",
    "return_time",
    "section_contains",
    "winner_oracle",
    "cdf",
    "pdf",
    "covolume",
    "level_set_intervals",
    "find_local_extrema",
    "sample_distribution",
    "tail_estimate",
    "crossing_stamps",
    "dedupe_stamps",
    "count_nondiff",
    "bounds",
    "orbit_enumerate",
    "slope_gaps",
    "empirical_vs_analytic",
]
