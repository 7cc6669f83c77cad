from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from pinindex.ko import (
    DyadicMod2,
    KOClassRP,
    eta_prediction,
    ind_t,
    ko_from_sum,
    ko_order,
    ko_order_general,
    q_index,
    q_index_batch,
)


def classes(k):
    return st.builds(KOClassRP, st.just(k), st.integers(-10**9, 10**9), st.integers(-10**9, 10**9))


def test_order_examples():
    assert ko_order(0) == 4
    assert ko_order(1) == 64
    assert ko_order(3) == 16384


def test_order_general_examples():
    assert ko_order_general(10) == 64
    assert ko_order_general(2) == 4
    assert ko_order_general(1) == 2


@pytest.mark.parametrize("k", range(0, 9))
def test_order_agrees_with_general_count(k):
    assert ko_order(k) == ko_order_general(8 * k + 2)


def test_from_sum():
    assert ko_from_sum(1, 0, 0) == KOClassRP(0, 1, 0)
    assert ko_from_sum(0, 1, 0) == KOClassRP(0, 1, 3)
    assert ko_from_sum(1, 1, 1) == KOClassRP(1, 2, 63)


def test_q_examples():
    assert q_index(KOClassRP(0, 1, 0)).value == Fraction(1, 4)
    assert q_index(KOClassRP(0, 1, 3)).value == Fraction(7, 4)
    assert q_index(KOClassRP(0, 0, 0)).value == 0


def test_index_and_eta_examples():
    assert ind_t(KOClassRP(0, 1, 0)).value == Fraction(1, 4)
    assert ind_t(KOClassRP(1, 1, 0)).value == Fraction(1, 64)
    assert eta_prediction(KOClassRP(0, 0, 0)).value == 0


def test_q_well_defined_on_group():
    # n and n + 2^{4k+2} are the same class, and the formula agrees
    for k in range(3):
        n = 5
        a = Fraction(3, 1 << (4 * k + 2)) + Fraction(n, 1 << (4 * k + 1))
        b = Fraction(3, 1 << (4 * k + 2)) + Fraction(n + ko_order(k), 1 << (4 * k + 1))
        assert DyadicMod2(a) == DyadicMod2(b)


@pytest.mark.parametrize("k", [0, 1, 2])
@given(data=st.data())
def test_q_homomorphism(k, data):
    a, b = data.draw(classes(k)), data.draw(classes(k))
    assert q_index(a + b) == q_index(a) + q_index(b)
    assert q_index(-a) == -q_index(a)
    assert q_index(3 * a) == 3 * q_index(a)


@pytest.mark.parametrize("k", [0, 1, 2, 5])
@given(data=st.data())
def test_q_denominator_bound(k, data):
    a = data.draw(classes(k))
    assert ko_order(k) % q_index(a).denominator == 0


def test_classes_over_different_spaces_do_not_mix():
    with pytest.raises(ValueError):
        KOClassRP(0, 1, 0) + KOClassRP(1, 1, 0)


def test_dyadic_rejects_non_dyadic():
    with pytest.raises(ValueError):
        DyadicMod2(Fraction(1, 3))
    assert DyadicMod2(Fraction(9, 4)).value == Fraction(1, 4)
    assert DyadicMod2(Fraction(-1, 4)).value == Fraction(7, 4)


def test_batch_matches_scalar():
    rng = np.random.default_rng(0)
    for k in (0, 1, 4):
        m = rng.integers(0, 1 << 40, size=200, dtype=np.int64)
        n = rng.integers(0, 1 << 40, size=200, dtype=np.int64)
        num = q_index_batch(k, m, n)
        for i in range(200):
            q = q_index(KOClassRP(k, int(m[i]), int(n[i])))
            assert q.value == Fraction(int(num[i]), 1 << (4 * k + 2))
