import random

import pytest
from hypothesis import given, strategies as st

from s2star.errors import ParseError
from s2star.expr import parse_expr, tokenize
from s2star.orbit import FreePoly, InvariantPoly
from s2star.scalars import Scalar
from s2star.suites import random_invariant


def test_relation_reduces_to_one():
    assert parse_expr("A^2 + 4*B*C") == InvariantPoly.constant(1)


def test_literals_and_division():
    g = InvariantPoly.generators()
    assert parse_expr("1/2 + 1/2*A") == (InvariantPoly.constant(1) + g["A"]) * Scalar(1) / 2
    assert parse_expr("h/(8 - h)*B") == g["B"] * (Scalar.hbar() / (8 - Scalar.hbar()))
    assert parse_expr("-A") == -g["A"]
    assert parse_expr("(1/2-1/3*i)*C").terms[(0, 0, 1)] == Scalar(parse_expr("1/2-1/3*i").terms[(0, 0, 0)])


def test_free_variables_give_free_poly():
    p = parse_expr("U*Ubar + A")
    assert isinstance(p, FreePoly)


def test_parse_error_position():
    with pytest.raises(ParseError) as err:
        parse_expr("A +")
    assert err.value.position == 3
    assert err.value.expected
    with pytest.raises(ParseError):
        parse_expr("A ^ B")
    with pytest.raises(ParseError):
        parse_expr("B/A")
    with pytest.raises(ParseError):
        parse_expr("A $ B")


def test_tokenize_positions():
    toks = tokenize("A*B^2")
    assert [t[1] for t in toks][:5] == ["A", "*", "B", "^", "2"]


@given(st.integers(0, 10**6))
def test_canonical_round_trip(seed):
    rng = random.Random(seed)
    p = random_invariant(rng, 4, 4, complex_=True, with_h=True)
    assert parse_expr(str(p)) == p
