from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from s2star.errors import SingularBlock
from s2star.linalg import inverse, rref, solve_with_nullspace
from s2star.scalars import Scalar

entries = st.fractions(min_value=-4, max_value=4, max_denominator=3)


def matmul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))] for i in range(len(a))]


@given(st.lists(st.lists(entries, min_size=3, max_size=3), min_size=3, max_size=3))
def test_inverse(m):
    try:
        inv = inverse(m)
    except SingularBlock:
        return
    assert matmul(m, inv) == [[Fraction(int(i == j)) for j in range(3)] for i in range(3)]


def test_singular():
    with pytest.raises(SingularBlock):
        inverse([[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]])


def test_nullspace_and_solution():
    m = [[Fraction(1), Fraction(1), Fraction(0)], [Fraction(0), Fraction(0), Fraction(1)]]
    x, null = solve_with_nullspace(m, [Fraction(2), Fraction(3)])
    assert matmul(m, [[v] for v in x]) == [[Fraction(2)], [Fraction(3)]]
    assert len(null) == 1 and matmul(m, [[v] for v in null[0]]) == [[0], [0]]
    assert solve_with_nullspace([[Fraction(0)]], [Fraction(1)])[0] is None


def test_works_over_scalars():
    h = Scalar.hbar()
    m = [[h, Scalar(1)], [Scalar(0), h - 8]]
    inv = inverse(m)
    assert inv[0][0] * h == Scalar(1)
    red, pivots = rref(m)
    assert pivots == [0, 1] and red == [[Scalar(1), Scalar(0)], [Scalar(0), Scalar(1)]]
