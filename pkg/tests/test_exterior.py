import random
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pinindex.clifford import CliffordElement
from pinindex.exterior import (
    GaussianSection,
    OperatorMatrix,
    apply_D,
    apply_DV,
    apply_V,
    clifford_exterior_iso,
    clifford_op,
    harmonic_oscillator,
    hat_op,
    hat_sum,
    lowest_eigenspace,
    number_op,
    oscillator_kernel,
    s_operator,
    s_operator_closed_form,
    s_spectrum,
    sigma,
    structure_ops,
    tau,
    tau_star,
    tilde_op,
)


def unit(m, i):
    v = [0] * m
    v[i - 1] = 1
    return v


def ident(m):
    return OperatorMatrix.identity(1 << m)


def vectors(m):
    return st.lists(st.fractions(min_value=-4, max_value=4, max_denominator=3), min_size=m, max_size=m)


def test_c_on_one_m2():
    c1 = clifford_op(unit(2, 1))
    assert c1.column(0) == [(0b01, 1)]


def test_c_squares_m2():
    c1 = clifford_op(unit(2, 1))
    assert c1 @ c1 == -ident(2)


def test_c_and_hat_anticommute_m2():
    c1, h1 = clifford_op(unit(2, 1)), hat_op(unit(2, 1))
    assert (c1 @ h1 + h1 @ c1).is_zero()


@settings(max_examples=25, deadline=None)
@given(vectors(4), vectors(4))
def test_clifford_relations(e, f):
    dot = sum(a * b for a, b in zip(e, f))
    ce, cf = clifford_op(e), clifford_op(f)
    he, hf = hat_op(e), hat_op(f)
    assert ce @ cf + cf @ ce == ident(4).scale(-2 * dot)
    assert he @ hf + hf @ he == ident(4).scale(2 * dot)
    assert (ce @ hf + hf @ ce).is_zero()


@pytest.mark.parametrize("m", [2, 4, 6])
def test_c_and_tilde_are_left_and_right_multiplication(m):
    # independent route: products of blades in the Clifford algebra
    for i in range(1, m + 1):
        g = CliffordElement.generator(m, i)
        c, t = clifford_op(unit(m, i)), tilde_op(unit(m, i))
        for b in range(1 << m):
            blade = CliffordElement(m, {b: 1})
            assert dict(c.column(b)) == (g * blade).terms
            assert dict(t.column(b)) == (blade * g).terms


def test_sigma_and_number_m2():
    assert sigma(2).diagonal() == [1, -1, -1, 1]
    assert number_op(2).diagonal() == [0, 1, 1, 2]


def test_s_and_hat_sum_m2():
    assert s_operator(2).diagonal() == [-2, 0, 0, 2]
    assert hat_sum(2).diagonal() == [-2, 0, 0, 2]


@pytest.mark.parametrize("m", [2, 4, 6, 8])
def test_s_closed_form(m):
    assert s_operator(m) == s_operator_closed_form(m)
    assert hat_sum(m) == number_op(m).scale(2) - ident(m).scale(m)


@pytest.mark.parametrize("m", [2, 4, 6, 8])
def test_tau_star_is_sigma_tau(m):
    ops = structure_ops(m)
    assert ops.tau_star == ops.sigma @ ops.tau
    assert ops.tau @ ops.tau == ident(m)


@pytest.mark.parametrize("m", [2, 4, 6, 8])
def test_tau_commutes_with_right_and_anticommutes_with_left(m):
    t, ts = tau(m), tau_star(m)
    for i in range(1, m + 1):
        c, ct = clifford_op(unit(m, i)), tilde_op(unit(m, i))
        assert (t @ c + c @ t).is_zero()
        assert t @ ct == ct @ t
        assert (ts @ ct + ct @ ts).is_zero()


def test_tau_phase_depends_on_m_mod_4():
    assert not tau(2).is_real and not tau(6).is_real
    assert tau(4).is_real and tau(8).is_real


def test_s_spectrum_m2():
    assert s_spectrum(2) == [(-2, 1), (0, 2), (2, 1)]


def test_s_spectrum_m4():
    assert s_spectrum(4) == [(-4, 1), (-2, 4), (0, 6), (2, 4), (4, 1)]


@pytest.mark.parametrize("m", [2, 4, 6, 8, 10])
def test_s_spectrum_binomial(m):
    expected = {}
    for p in range(m + 1):
        v = (-1) ** p * (2 * p - m)
        expected[v] = expected.get(v, 0) + comb(m, p)
    assert s_spectrum(m) == sorted(expected.items())
    assert s_spectrum(m)[0] == (-m, 1)
    assert lowest_eigenspace(m) == [0]


def test_size_guards():
    with pytest.raises(ValueError):
        s_operator(14)
    with pytest.raises(ValueError):
        sigma(3)


def test_iso_examples():
    iso = clifford_exterior_iso(2)
    assert iso.column(0b01) == [(0b01, 1)]
    assert iso.column(0b11) == [(0b11, 1)]


def test_iso_m6_rank():
    iso = clifford_exterior_iso(6)
    assert iso.rank() == 64


def test_D_of_zero():
    assert apply_D(GaussianSection(2)).is_zero()
    assert apply_V(GaussianSection(4)).is_zero()


@pytest.mark.parametrize("m", [2, 4])
def test_beta_is_annihilated(m):
    beta = GaussianSection.beta(m)
    assert apply_DV(beta).is_zero()
    assert not apply_D(beta).is_zero()


@pytest.mark.parametrize("m", [2, 4])
def test_square_is_harmonic_oscillator(m):
    rng = random.Random(100 + m)
    for _ in range(40):
        s = GaussianSection.random(m, 4, rng)
        assert apply_DV(apply_DV(s)) == harmonic_oscillator(s)


def test_DV_is_linear():
    rng = random.Random(9)
    s, t = GaussianSection.random(4, 3, rng), GaussianSection.random(4, 3, rng)
    assert apply_DV(s + t.scale(Fraction(3, 2))) == apply_DV(s) + apply_DV(t).scale(Fraction(3, 2))


def test_harmonic_on_constants():
    # H on constants is m + S; on blade 1 that is m - m = 0
    m = 4
    for b in range(1 << m):
        out = harmonic_oscillator(GaussianSection(m, {((0,) * m, b): 1}))
        expected = m + s_operator(m).entry(b, b)
        assert out == GaussianSection(m, {((0,) * m, b): expected})


@pytest.mark.parametrize("m,d", [(2, 0), (2, 1), (2, 2), (4, 0), (4, 1), (4, 2)])
def test_oscillator_kernel(m, d):
    ker = oscillator_kernel(m, d)
    assert ker.dimension == 1
    (vec,) = ker.basis
    assert set(vec.terms) == {((0,) * m, 0)}


def test_oscillator_guard():
    with pytest.raises(ValueError):
        oscillator_kernel(8, 3)
