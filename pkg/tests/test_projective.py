from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pinindex.projective import (
    StructureKind,
    Z2Poly,
    admits_pin_minus,
    pin_obstruction,
    pin_obstruction_closed_form,
    structure_kind,
    sw_total,
    sw_total_by_powering,
)


def polys(q):
    return st.integers(0, (1 << (q + 1)) - 1).map(lambda b: Z2Poly(q, b))


def test_sw_examples():
    assert sw_total(2) == Z2Poly.from_coeffs(2, [1, 1, 1])
    assert sw_total(3) == Z2Poly(3, 1)
    assert sw_total(1) == Z2Poly(1, 1)


@pytest.mark.parametrize("q", range(1, 200))
def test_sw_matches_binomials_and_powering(q):
    w = sw_total(q)
    assert w.coeffs() == [comb(q + 1, j) % 2 for j in range(q + 1)]
    assert w == sw_total_by_powering(q)


def test_obstruction_examples():
    assert pin_obstruction(10) == 0
    assert pin_obstruction(4) == 1
    assert pin_obstruction(2) == 0


def test_obstruction_sweep():
    for q in range(2, 3000):
        assert pin_obstruction(q) == pin_obstruction_closed_form(q)


def test_kind_examples():
    assert structure_kind(10) is StructureKind.PIN_MINUS_NONORIENTABLE
    assert structure_kind(7) is StructureKind.SPIN
    assert structure_kind(4) is StructureKind.NOT_PIN_MINUS


@pytest.mark.parametrize("k", range(0, 6))
def test_8k_plus_2_is_pin_minus(k):
    assert structure_kind(8 * k + 2) is StructureKind.PIN_MINUS_NONORIENTABLE


def test_admits_pin_minus():
    w = sw_total(10)
    assert admits_pin_minus(w.part(1), w.part(2))
    assert admits_pin_minus(Z2Poly(5, 0), Z2Poly(5, 0))
    w4 = sw_total(4)
    assert not admits_pin_minus(w4.part(1), w4.part(2))


def test_admits_pin_minus_rejects_bad_input():
    with pytest.raises(ValueError):
        admits_pin_minus(Z2Poly(4, 0b100), Z2Poly(4, 0))
    with pytest.raises(ValueError):
        admits_pin_minus(Z2Poly(4, 0), Z2Poly(5, 0))


def test_truncation():
    a = Z2Poly.gen(3)
    assert a ** 3 == Z2Poly(3, 0b1000)
    assert not a ** 4


@given(polys(9), polys(9), polys(9))
def test_ring_laws(x, y, z):
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x
    assert x + x == Z2Poly(9, 0)


@given(polys(12))
def test_frobenius(x):
    assert (x + Z2Poly(12, 1)) ** 2 == x * x + Z2Poly(12, 1)
