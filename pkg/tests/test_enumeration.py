import math

import numpy as np
import pytest

from staircase_gaps import enumeration, geometry, section


def _keyset(vectors, digits=8):
    return {(round(x, digits), round(y, digits)) for x, y in vectors}


def test_seed_handling():
    res = enumeration.orbit_enumerate(7, 6.0)
    keys = _keyset(res.vectors)
    assert (1.0, 0.0) in keys
    # the vertical seed has no positive horizontal part, so it is filtered
    assert all(x > 0 for x, _ in res.vectors)


def test_contains_all_winners():
    for n in (5, 7, 10):
        x_max = 1.0 + geometry.edge_h(n, 1) + geometry.edge_h(n, math.ceil(n / 2))
        res = enumeration.orbit_enumerate(n, x_max, slope_max=1.0)
        keys = _keyset(res.vectors)
        for a, b in section.lambda_vectors(n):
            if a > 0.0 and a <= x_max and b <= a + 1e-9:
                assert (round(a, 8), round(b, 8)) in keys


def test_contains_sheared_vertical_seed():
    n = 7
    target = (2.0 * (1.0 + math.cos(math.pi / n)), 1.0)
    res = enumeration.orbit_enumerate(n, target[0] + 0.5)
    assert (round(target[0], 8), round(target[1], 8)) in _keyset(res.vectors)


def test_stability_flag_and_determinism():
    a = enumeration.orbit_enumerate(5, 24.0)
    b = enumeration.orbit_enumerate(5, 24.0)
    assert a.stable and a.stable_depth is not None
    assert a.vectors == b.vectors
    # truncating the search while the set is still growing raises the flag
    trunc = enumeration.orbit_enumerate(5, 24.0, max_depth=3)
    assert not trunc.stable


def test_enumeration_matches_larger_caps():
    # the default intermediate cap already saturates the window
    for n in (5, 7):
        small = enumeration.orbit_enumerate(n, 30.0)
        big = enumeration.orbit_enumerate(n, 30.0, prune_norm=10.0 * 30.0)
        missing = _keyset(big.vectors, 7) - _keyset(small.vectors, 7)
        assert not missing


def test_slope_gaps_basic():
    gs = enumeration.slope_gaps(7, 8.0)
    assert gs.slopes[0] == 0.0
    assert np.all(gs.gaps > 0.0)
    assert gs.count == gs.slopes.size == gs.gaps.size
    assert np.all(np.diff(gs.slopes) > 0.0)
    assert gs.slopes[-1] < 1.0
    # gaps tile one period exactly
    assert np.sum(gs.gaps) == pytest.approx(8.0 * 8.0, rel=1e-12)


def test_slope_set_invariant_under_unit_shift():
    # applying [[1,0],[1,1]] to every vector reproduces the slope set mod 1
    gs = enumeration.slope_gaps(7, 10.0)
    res = enumeration.orbit_enumerate(7, 10.0)
    shifted = np.array([(x + y) / x for x, y in res.vectors])
    shifted_slopes = np.unique(np.round(shifted % 1.0, 9))
    assert shifted_slopes == pytest.approx(gs.slopes, abs=1e-9)


def test_quadratic_growth():
    n32 = enumeration.slope_gaps(7, 32.0).count
    n64 = enumeration.slope_gaps(7, 64.0).count
    assert abs((n64 / 64.0**2) / (n32 / 32.0**2) - 1.0) < 0.10


def test_ks_converges():
    ks10 = enumeration.empirical_vs_analytic(7, 10.0)
    ks40 = enumeration.empirical_vs_analytic(7, 40.0)
    assert ks40 < ks10
    assert enumeration.empirical_vs_analytic(3, 60.0) < 0.05


def test_min_renormalized_gap_respects_support():
    # support of the limiting law starts at 1; finite-strip gaps may dip
    # below, but not collapse toward zero
    gs = enumeration.slope_gaps(5, 40.0)
    assert float(np.min(gs.gaps)) > 0.5


def test_parameter_validation():
    with pytest.raises(ValueError):
        enumeration.orbit_enumerate(7, -1.0)
    with pytest.raises(ValueError):
        enumeration.orbit_enumerate(7, 5.0, max_depth=0)
    with pytest.raises(ValueError):
        enumeration.slope_gaps(7, 0.5)
