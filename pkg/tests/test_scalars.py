from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from oracles import gauss_to_sympy, h, same_function, scalar_to_sympy
from s2star.errors import DivisionByZero, EvalAtPole, NotRegularAtZero, ParseError
from s2star.scalars import (
    I,
    GaussRat,
    Scalar,
    parse_scalar,
    scalar_arith,
    scalar_eval,
    scalar_poles,
    scalar_taylor,
)

small = st.fractions(min_value=-5, max_value=5, max_denominator=6)
gauss = st.builds(GaussRat, small, small)


@st.composite
def scalars(draw, max_deg=3):
    num = [draw(gauss) for _ in range(draw(st.integers(0, max_deg)) + 1)]
    den = [draw(gauss) for _ in range(draw(st.integers(0, max_deg)) + 1)]
    if not any(den):
        den = [GaussRat(1)]
    return Scalar.from_polys(tuple(num), tuple(den))


def test_gaussrat_basics():
    z = GaussRat(Fraction(1, 2), Fraction(-1, 3))
    assert z * z.inverse() == GaussRat(1)
    assert z.conjugate() == GaussRat(Fraction(1, 2), Fraction(1, 3))
    assert z.abs2() == Fraction(1, 4) + Fraction(1, 9)
    assert I * I == GaussRat(-1)
    with pytest.raises(DivisionByZero):
        GaussRat(0).inverse()


@given(gauss, gauss)
def test_gaussrat_matches_sympy(a, b):
    assert gauss_to_sympy(a * b) == sp.expand(gauss_to_sympy(a) * gauss_to_sympy(b))
    assert gauss_to_sympy(a - b) == gauss_to_sympy(a) - gauss_to_sympy(b)


def test_normalization():
    hb = Scalar.hbar()
    assert (hb * hb - hb) / hb == hb - 1
    s = Scalar.from_polys((GaussRat(2),), (GaussRat(0), GaussRat(4)))
    assert s.den[-1] == GaussRat(1)
    assert str(s) == "(1/2)/(1*h)"


@settings(max_examples=20)
@given(scalars(), scalars())
def test_field_operations_against_sympy(a, b):
    for op, f in (("add", lambda x, y: x + y), ("mul", lambda x, y: x * y), ("sub", lambda x, y: x - y)):
        assert same_function(scalar_to_sympy(scalar_arith(a, b, op)), f(scalar_to_sympy(a), scalar_to_sympy(b)))
    if b:
        assert same_function(scalar_to_sympy(a / b), scalar_to_sympy(a) / scalar_to_sympy(b))


@given(scalars(), scalars(), scalars())
def test_field_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    if a:
        assert a * a.inverse() == Scalar(1)


def test_eval_and_pole():
    c2 = parse_scalar("(-1/16*h^2)/(h - 8)")
    assert scalar_eval(c2, GaussRat(4)) == GaussRat(Fraction(1, 4))
    with pytest.raises(EvalAtPole):
        scalar_eval(c2, GaussRat(8))


def test_taylor():
    c2 = parse_scalar("(-1/16*h^2)/(h - 8)")
    assert list(scalar_taylor(c2, 3).coeffs) == [0, 0, Fraction(1, 128), Fraction(1, 1024)]
    with pytest.raises(NotRegularAtZero):
        scalar_taylor(Scalar.hbar().inverse(), 2)


@given(scalars(2))
def test_taylor_against_sympy(a):
    if not a.is_regular_at_zero():
        return
    ser = sp.series(scalar_to_sympy(a), h, 0, 4).removeO()
    ours = sum(gauss_to_sympy(GaussRat.coerce(c)) * h**k for k, c in enumerate(scalar_taylor(a, 3).coeffs))
    assert sp.expand(ser - ours) == 0


def test_poles():
    c3 = parse_scalar("(1/384*h^3)/((8 - h)*(8 - 2*h))")
    assert set(scalar_poles(c3).roots) == {GaussRat(8), GaussRat(4)}
    ps = scalar_poles(parse_scalar("1/(h^2+1)"))
    assert set(ps.roots) == {I, -I}
    irr = scalar_poles(parse_scalar("1/(h^2-2)"))
    assert not irr.roots and irr.factors
    assert str(scalar_poles(parse_scalar("1/(h-8)"))) == "{8}"


@given(scalars(2))
def test_poles_against_sympy(a):
    den = sp.Poly(sp.denom(sp.cancel(scalar_to_sympy(a))), h)
    expect = {r for r in sp.roots(den, filter=None) if r.is_rational or (sp.re(r).is_rational and sp.im(r).is_rational)}
    got = {gauss_to_sympy(r) for r in scalar_poles(a).roots}
    assert got == {sp.nsimplify(r) for r in expect}


@given(scalars())
def test_text_round_trip(a):
    assert parse_scalar(str(a)) == a


def test_parse_errors():
    with pytest.raises(ParseError):
        parse_scalar("1/(A)")
    with pytest.raises(ParseError):
        parse_scalar("(h")
