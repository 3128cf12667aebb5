import random
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, strategies as st

from oracles import U as sU, Ub as sUb, V as sV, Vb as sVb, XT, YT, gauss_to_sympy
from s2star.errors import NotInvariant
from s2star.orbit import (
    FreePoly,
    InvariantPoly,
    embed,
    evaluate,
    group_action,
    is_right_invariant,
    is_sphere_normal,
    k_down,
    k_up,
    leftinv,
    leftinv_power,
    reduce_sphere,
    sample_points,
    spread_points,
    to_ABC,
)
from s2star.scalars import GaussRat, Scalar
from s2star.suites import random_invariant

G = FreePoly.generators()
U, Ub, V, Vb = G["U"], G["Ubar"], G["V"], G["Vbar"]
A, B, C = (InvariantPoly.generators()[n] for n in "ABC")
free_monos = st.tuples(*(st.integers(0, 3) for _ in range(4)))
SYMS = (sU, sUb, sV, sVb)


def to_sympy(p: FreePoly):
    out = 0
    for m, c in p.terms.items():
        term = gauss_to_sympy(Scalar.coerce(c).constant_value())
        for s, e in zip(SYMS, m):
            term *= s**e
        out += term
    return sp.expand(out)


def test_relation_and_reduction():
    assert A * A + B * C * 4 == InvariantPoly.constant(1)
    assert A**3 == A - A * B * C * 4
    assert reduce_sphere(U * Ub) == FreePoly.constant(1) - V * Vb
    assert to_ABC(U * Ub) == (InvariantPoly.constant(1) + A) * Fraction(1, 2)
    assert to_ABC((V * Vb) ** 2) == InvariantPoly.constant(Fraction(1, 2)) - B * C - A * Fraction(1, 2)


@given(st.integers(0, 10**6))
def test_embed_round_trip(seed):
    p = random_invariant(random.Random(seed), 5, 4)
    e = embed(p)
    assert is_sphere_normal(e) and is_right_invariant(e)
    assert to_ABC(e) == p


@given(free_monos, free_monos)
def test_reduction_is_multiplicative(m1, m2):
    # confluence: reducing factors first does not change the normal form
    p, q = FreePoly.monomial(m1), FreePoly.monomial(m2)
    assert reduce_sphere(p * q) == reduce_sphere(reduce_sphere(p) * reduce_sphere(q))


def test_not_invariant():
    with pytest.raises(NotInvariant):
        to_ABC(U * U * Ub)


@given(free_monos)
def test_left_invariant_fields_against_oracle(m):
    p = FreePoly.monomial(m)
    assert to_sympy(leftinv("X", p)) == XT(to_sympy(p))
    assert to_sympy(leftinv("Y", p)) == YT(to_sympy(p))


@given(free_monos, free_monos)
def test_leibniz(m1, m2):
    p, q = FreePoly.monomial(m1), FreePoly.monomial(m2)
    for z in "XY":
        assert leftinv(z, p * q) == leftinv(z, p) * q + p * leftinv(z, q)


@given(free_monos)
def test_degree_kill(m):
    p = FreePoly.monomial(m)
    assert not leftinv_power("Y", p, k_up(m) + 1)
    assert not leftinv_power("X", p, k_down(m) + 1)
    # the bound is sharp
    assert leftinv_power("Y", p, k_up(m))
    assert leftinv_power("X", p, k_down(m))


def test_evaluation():
    k = spread_points(2)[0]
    for name in "ABC":
        g = InvariantPoly.generators()[name]
        assert evaluate(g, k) == evaluate(embed(g), k)
    assert evaluate(A, GroupElement_(Fraction(3, 5), Fraction(4, 5))) == GaussRat(Fraction(-7, 25))


def GroupElement_(u, v):
    from s2star.uea import GroupElement

    return GroupElement(GaussRat(u), GaussRat(v))


def test_points_on_group():
    for k in sample_points(12) + spread_points(12):
        assert k.u.abs2() + k.v.abs2() == 1
    assert all(k.u and k.v for k in spread_points(20))


def test_group_action():
    flip = GroupElement_(0, 1)
    assert group_action(flip, A) == -A
    ks = spread_points(4)
    p = A * B + C * C * 3
    lhs = group_action(ks[0], group_action(ks[1], p))
    assert lhs == group_action(ks[0] * ks[1], p)
    x = ks[2]
    assert evaluate(group_action(ks[0], p), x) == evaluate(p, ks[0].inverse() * x)
