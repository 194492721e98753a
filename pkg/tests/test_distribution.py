import math

import numpy as np
import pytest
from scipy.integrate import quad
from scipy.special import spence

from staircase_gaps import distribution, nondiff
from staircase_gaps.section import build_partition


def test_level_set_intervals_at_support_edge():
    res = distribution.level_set_intervals(5, "omega2", 1.0)
    assert res.intervals == ()


def test_level_set_intervals_tangency():
    # at t = 4 the curve touches y = 1 - x at x = 1/2; the touch point sits
    # inside a single merged interval
    res = distribution.level_set_intervals(5, "omega2", 4.0)
    assert len(res.intervals) == 1
    (lo, hi), = res.intervals
    assert lo < 0.5 < hi
    # just above the tangency the interval splits in two
    res = distribution.level_set_intervals(5, "omega2", 4.0 + 1e-6)
    assert len(res.intervals) == 2
    # just below, still one
    res = distribution.level_set_intervals(5, "omega2", 4.0 - 1e-6)
    assert len(res.intervals) == 1


@pytest.mark.parametrize("t", [1.3, 2.0, 3.99, 4.0, 5.7, 40.0])
def test_omega2_and_p1_intervals_identical(t):
    a = distribution.level_set_intervals(7, "omega2", t)
    b = distribution.level_set_intervals(7, 1, t)
    assert a.intervals == b.intervals


def test_interval_invariants():
    for t in (1.5, 3.0, 8.0, 25.0):
        for region in ("omega2", 1, 2, 4, 7):
            res = distribution.level_set_intervals(7, region, t)
            for lo, hi in res.intervals:
                assert 0.0 < lo < hi <= 1.0
            for (_, hi1), (lo2, _) in zip(res.intervals, res.intervals[1:]):
                assert hi1 < lo2


def test_cdf_support_and_normalization():
    for n in range(3, 13):
        assert distribution.cdf(n, 1.0) == 0.0
        assert distribution.cdf(n, 0.3) == 0.0
        assert distribution.cdf(n, 1e6) == pytest.approx(1.0, abs=1e-6)


def test_cdf_monotone_and_continuous_at_four():
    ts = np.linspace(1.0, 12.0, 400)
    vals = [distribution.cdf(7, t) for t in ts]
    assert all(b >= a - 1e-14 for a, b in zip(vals, vals[1:]))
    jump = distribution.cdf(7, 4.0) - distribution.cdf(7, 4.0 - 1e-6)
    assert abs(jump) < 1e-5


def test_pdf_zero_below_support():
    for n in (3, 7):
        assert distribution.pdf(n, 0.5) == 0.0
        assert distribution.pdf(n, 1.0) == 0.0


@pytest.mark.parametrize("n", range(3, 11))
def test_pdf_matches_cdf_derivative(n):
    stamps = nondiff.dedupe_stamps(nondiff.crossing_stamps(n))
    rng = np.random.default_rng(500 + n)
    h = 1e-5
    checked = 0
    while checked < 100:
        t = rng.uniform(1.02, max(stamps) + 3.0)
        if min(abs(t - s) for s in stamps) < 5.0 * h:
            continue
        checked += 1
        fd = (distribution.cdf(n, t + h) - distribution.cdf(n, t - h)) / (2.0 * h)
        assert distribution.pdf(n, t) == pytest.approx(fd, abs=1e-5)


def test_pdf_example_value_n7():
    t = 2.0
    fd = (distribution.cdf(7, t + 1e-5) - distribution.cdf(7, t - 1e-5)) / 2e-5
    assert distribution.pdf(7, t) == pytest.approx(fd, abs=1e-6)


def _dilog_piece(c0, c1, x0, x1):
    """Closed form of int ln(c0 + c1 x)/x dx via the dilogarithm."""

    def F(x):
        if x == 0.0:
            return 0.0
        # singular endpoints have c0 + c1 x = 0 up to roundoff
        z = max(1.0 + c1 * x / c0, 0.0)
        return math.log(c0) * math.log(x) - spence(z)

    return F(x1) - F(x0)


@pytest.mark.parametrize("n", [3, 4, 7, 10, 50, 100])
def test_covolume_against_reference_and_dilog(n):
    val = distribution.covolume(n)
    ref = distribution.reference_covolume(n)
    assert val == pytest.approx(ref, rel=1e-5)
    # independent closed-form evaluation of the same cell integrals
    closed = 0.0
    regions = build_partition(n)
    for region in (regions[0],) + tuple(regions):
        a, b = region.winner
        for piece in region.bottom:
            c0 = b * piece.line.alpha
            c1 = a + b * piece.line.beta
            closed -= _dilog_piece(c0, c1, piece.x_lo, piece.x_hi)
    assert val == pytest.approx(closed, rel=1e-9)


def test_covolume_table_values():
    # published table rows, 1e-3 absolute
    assert distribution.covolume(3) == pytest.approx(6.5797, abs=1e-3)
    assert distribution.covolume(7) == pytest.approx(8.4597, abs=1e-3)


def test_omega2_cell_integral_is_pi2_over_6():
    val, _ = quad(lambda x: -math.log(1.0 - x) / x, 0.0, 1.0)
    assert val == pytest.approx(math.pi**2 / 6.0, abs=1e-8)
    # and the full covolume for n=3 is four such pieces
    assert distribution.covolume(3) == pytest.approx(4.0 * math.pi**2 / 6.0, rel=1e-10)


def test_multimodality_n7():
    ext = distribution.find_local_extrema(7, 1.0, 10.0)
    kinds = [k for _, _, k in ext]
    assert kinds.count("max") >= 2
    first_max = kinds.index("max")
    assert "min" in kinds[first_max:]
    m1, mn, m2 = ext[0], ext[1], ext[2]
    assert (m1[2], mn[2], m2[2]) == ("max", "min", "max")
    # value ratios against the reported extrema of the 14-gon density
    assert m1[1] / mn[1] == pytest.approx(0.691264 / 0.681558, rel=1e-4)
    assert m2[1] / mn[1] == pytest.approx(0.700232 / 0.681558, rel=1e-4)
    # the time axis is the staircase one: t = reported / sin(pi/7)
    s = math.sin(math.pi / 7.0)
    assert m1[0] == pytest.approx(0.715353 / s, rel=1e-5)
    assert mn[0] == pytest.approx(0.781831 / s, rel=1e-5)
    assert m2[0] == pytest.approx(0.870497 / s, rel=1e-5)


def test_unimodal_n3():
    ext = distribution.find_local_extrema(3, 1.0, 50.0)
    assert [k for _, _, k in ext].count("max") == 1
    assert [k for _, _, k in ext].count("min") == 0


@pytest.mark.parametrize("n", [6, 7, 9])
def test_first_maximum_at_sqrt_e(n):
    # below the first interior crossing time only the four unit-height
    # winners contribute, so the density is 4 ln(t) / (Z t^2) there, with
    # its maximum 2/(e Z) exactly at sqrt(e); that crossing time
    # 2 cos(pi/n) exceeds sqrt(e) once n >= 6
    assert 2.0 * math.cos(math.pi / n) > math.e**0.5
    ext = distribution.find_local_extrema(n, 1.0, 3.0)
    assert ext[0][2] == "max"
    assert ext[0][0] == pytest.approx(math.e**0.5, abs=1e-7)
    z = distribution.normalization(n)
    assert ext[0][1] == pytest.approx(2.0 / (math.e * z), rel=1e-9)


def test_tail_estimate_stabilizes():
    for n in (3, 7):
        a = distribution.tail_estimate(n, 1e3)
        b = distribution.tail_estimate(n, 1e4)
        assert a > 0.0
        assert abs(b - a) / a < 0.02


def test_sample_distribution_table():
    grid = np.arange(1.0, 10.0 + 1e-9, 0.01)
    table = distribution.sample_distribution(5, grid)
    assert table.t.size == 901
    assert 0.5 < table.cdf[-1] < 1.0
    assert np.all(table.pdf >= 0.0)
    assert np.all(np.diff(table.cdf) >= -1e-14)
    integral = np.trapezoid(table.pdf, table.t)
    assert integral == pytest.approx(table.cdf[-1] - table.cdf[0], abs=1e-3)


def test_sample_distribution_refinement_adds_stamp_points():
    grid = np.linspace(1.0, 8.0, 101)
    plain = distribution.sample_distribution(5, grid)
    refined = distribution.sample_distribution(5, grid, refine_stamps=True)
    assert refined.t.size > plain.t.size
    stamps = [t for t in nondiff.dedupe_stamps(nondiff.crossing_stamps(5)) if 1.0 < t < 8.0]
    for s in stamps:
        assert np.min(np.abs(refined.t - s)) < 1e-12


def test_sample_distribution_rejects_bad_grid():
    with pytest.raises(ValueError):
        distribution.sample_distribution(5, [2.0, 1.0])
    with pytest.raises(ValueError):
        distribution.sample_distribution(5, [-1.0, 2.0])


def test_normalization_constant():
    assert distribution.normalization(7) == pytest.approx(1.5 + math.cos(math.pi / 7), abs=1e-15)
