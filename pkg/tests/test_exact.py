from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pinindex._exact import ExactMatrix, exact_nullspace, exact_rank

small = st.fractions(min_value=-6, max_value=6, max_denominator=5)


def matrices(rows, cols):
    return st.lists(st.lists(small, min_size=cols, max_size=cols), min_size=rows, max_size=rows)


def dense(m: ExactMatrix):
    return [[x for x in row] for row in m.to_fraction_rows()]


def matmul(a, b):
    return [[sum((a[i][k] * b[k][j] for k in range(len(b))), Fraction(0)) for j in range(len(b[0]))]
            for i in range(len(a))]


@settings(max_examples=50, deadline=None)
@given(matrices(3, 4), matrices(4, 2))
def test_product_matches_fraction_arithmetic(a, b):
    got = ExactMatrix.from_rows(a) @ ExactMatrix.from_rows(b)
    assert dense(got) == matmul(a, b)


@settings(max_examples=50, deadline=None)
@given(matrices(3, 3), matrices(3, 3))
def test_sum_and_difference(a, b):
    x, y = ExactMatrix.from_rows(a), ExactMatrix.from_rows(b)
    assert dense(x + y) == [[p + q for p, q in zip(r, s)] for r, s in zip(a, b)]
    assert (x - y) + y == x


@settings(max_examples=40, deadline=None)
@given(matrices(4, 5))
def test_rank_matches_sympy(a):
    import sympy

    expected = sympy.Matrix([[sympy.Rational(v.numerator, v.denominator) for v in row] for row in a]).rank()
    assert ExactMatrix.from_rows(a).rank() == expected
    assert exact_rank(a) == expected


def test_normalization_is_canonical():
    a = ExactMatrix(np.array([[2, 4], [6, 0]]), 2)
    b = ExactMatrix(np.array([[1, 2], [3, 0]]))
    assert a == b and a.den == 1


def test_imaginary_phase():
    j = ExactMatrix(np.array([[0, -1], [1, 0]]))
    ij = j.times_i()
    assert not ij.is_real
    # (iJ)^2 = -J^2 = +1
    assert ij @ ij == ExactMatrix.identity(2)
    assert ij.times_i() == -j


def test_mixed_phase_sum_rejected():
    with pytest.raises(ValueError):
        ExactMatrix.identity(2) + ExactMatrix.identity(2).times_i()


def test_overflow_guard():
    big = ExactMatrix(np.array([[1 << 40]]))
    with pytest.raises(OverflowError):
        big @ big


def test_nullspace():
    rows = [[1, 2, 3], [2, 4, 6]]
    basis = exact_nullspace(rows)
    assert len(basis) == 2
    for v in basis:
        assert all(sum(Fraction(r[i]) * v[i] for i in range(3)) == 0 for r in rows)


def test_float_entries_rejected():
    with pytest.raises(TypeError):
        ExactMatrix.from_rows([[0.5]])
