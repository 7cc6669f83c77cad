from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pinindex.series import (
    RationalSeries,
    ch_rank2_complexified,
    hyperbolic,
    identity_a8,
    identity_a8_sides,
    identity_a45,
    identity_a45_sides,
)

ORDER = 10


def series_st(order=ORDER):
    coeff = st.fractions(min_value=-6, max_value=6, max_denominator=6)
    return st.lists(coeff, min_size=order + 1, max_size=order + 1).map(RationalSeries)


def test_sinh():
    assert hyperbolic("sinh", 1, 5) == RationalSeries([0, 1, 0, Fraction(1, 6), 0, Fraction(1, 120)])


def test_tanh_quarter():
    assert hyperbolic("tanh", Fraction(1, 4), 3) == RationalSeries([0, Fraction(1, 4), 0, Fraction(-1, 192)])


def test_cosh_scale_zero():
    assert hyperbolic("cosh", 0, 6) == RationalSeries([1], 6)


def test_x_over_sinh():
    s = hyperbolic("x/sinh(x)", 1, 6)
    assert s == RationalSeries([1, 0, Fraction(-1, 6), 0, Fraction(7, 360), 0, Fraction(-31, 15120)])


def test_unknown_name_rejected():
    with pytest.raises(ValueError):
        hyperbolic("cos", 1, 4)


def test_ch_rank2():
    assert ch_rank2_complexified(4) == RationalSeries([2, 0, 1, 0, Fraction(1, 12)])
    assert ch_rank2_complexified(2)[0] == 2


def test_ch_minus_cosh_half():
    diff = ch_rank2_complexified(2) - hyperbolic("cosh", Fraction(1, 2), 2) * 2
    assert diff == RationalSeries([0, 0, Fraction(3, 4)])


@pytest.mark.parametrize("order", [4, 8, 24, 40])
def test_identities_hold(order):
    assert identity_a45(order)
    assert identity_a8(order)


def test_identity_low_coefficients():
    lhs, rhs = identity_a45_sides(6)
    assert lhs[0] == rhs[0] == 0
    assert lhs[2] == rhs[2]
    lhs8, rhs8 = identity_a8_sides(6)
    assert lhs8[1] == rhs8[1] == 1
    assert lhs8.is_odd() and rhs8.is_odd()


def test_identity_guard():
    with pytest.raises(ValueError):
        identity_a45(3)
    with pytest.raises(ValueError):
        identity_a8(2)


def _float_a45(e):
    t = mpmath.tanh(e / 2)
    lhs = (t - e / 2) / (e * t) + ((e / 2) / mpmath.sinh(e / 2) - 1) / e
    return lhs, -mpmath.tanh(e / 4) / 2


def _float_a8(e):
    lhs = mpmath.tanh(e / 4) * mpmath.cosh(e) + (mpmath.cosh(e) - mpmath.cosh(e / 2)) / mpmath.sinh(e / 2)
    return lhs, mpmath.sinh(e)


def test_identities_in_high_precision_floats():
    with mpmath.workdps(50):
        e = mpmath.mpf("0.4")
        for lhs, rhs in (_float_a45(e), _float_a8(e)):
            assert abs(lhs - rhs) < mpmath.mpf(10) ** -45


def test_exact_series_agree_with_floats():
    # the truncated series at e = 0.4 approximates the analytic functions
    with mpmath.workdps(50):
        e = mpmath.mpf("0.4")
        for sides, ref in ((identity_a45_sides(30), _float_a45(e)), (identity_a8_sides(30), _float_a8(e))):
            for s, r in zip(sides, ref):
                val = sum(mpmath.mpf(c.numerator) / c.denominator * e ** j for j, c in enumerate(s.coeffs))
                assert abs(val - r) < mpmath.mpf(10) ** -20


@pytest.mark.parametrize("name,scale,odd", [("tanh", Fraction(1, 4), True), ("sinh", 1, True),
                                            ("cosh", 1, False), ("cosh", Fraction(1, 2), False)])
def test_parity(name, scale, odd):
    s = hyperbolic(name, scale, 21)
    assert s.is_odd() if odd else s.is_even()


def test_rational_functions_are_odd():
    lhs, _ = identity_a45_sides(21)
    assert lhs.is_odd()


@settings(max_examples=40, deadline=None)
@given(series_st(), series_st(), series_st())
def test_ring_laws(f, g, h):
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f * g == g * f


@settings(max_examples=40, deadline=None)
@given(series_st())
def test_inverse(f):
    if f[0] == 0:
        with pytest.raises(ZeroDivisionError):
            f.inverse()
    else:
        assert f * f.inverse() == RationalSeries([1], ORDER)


@settings(max_examples=30, deadline=None)
@given(series_st())
def test_exp_log_roundtrip(f):
    g = RationalSeries([0] + list(f.coeffs[1:]))
    assert g.exp().log() == g


def test_division_cancels_common_power():
    e = RationalSeries.variable(8)
    s = hyperbolic("sinh", 1, 8)
    q = s / e
    assert q.order == 7
    assert q == hyperbolic("sinh", 1, 9).shift_down(1).truncate(7)


def test_truncate_cannot_extend():
    with pytest.raises(ValueError):
        RationalSeries([1, 2]).truncate(5)
