import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from oracles import gauss_to_sympy, same_function, scalar_to_sympy, star_monomials_at
from s2star.errors import HbarAtPole
from s2star.orbit import FreePoly, InvariantPoly, spread_points
from s2star.scalars import I, GaussRat, Scalar, scalar_eval
from s2star.star import (
    StarConfig,
    commutator,
    formal_expand,
    hermitian_check,
    poisson,
    product_poles,
    star,
    star_via_free,
    twist_apply,
)
from s2star.suites import abc_monomials, random_invariant
from s2star.topology import scalar_at_point

A, B, C = (InvariantPoly.generators()[n] for n in "ABC")
ONE = InvariantPoly.constant(1)
hb = Scalar.hbar()
seeds = st.integers(0, 10**6)


def test_frozen_identities():
    assert star(A, A) == ONE - B * C * (4 - hb / 2)
    assert commutator(A, B) == B * (hb / 4)
    assert commutator(B, C) == A * (hb / 8)
    assert commutator(A, C) == C * (-hb / 4)


@pytest.mark.parametrize("m1", abc_monomials(2))
def test_against_twist_oracle(m1):
    x = spread_points(3)[2]
    u, v = gauss_to_sympy(x.u), gauss_to_sympy(x.v)
    for m2 in abc_monomials(2):
        ours = scalar_at_point(star(InvariantPoly.monomial(*m1), InvariantPoly.monomial(*m2)), x)
        assert same_function(scalar_to_sympy(ours), star_monomials_at(m1, m2, u, v, 8)), (m1, m2)


def test_other_lambda_against_oracle():
    lam = Fraction(5, 2)
    x = spread_points(2)[1]
    ours = scalar_at_point(star(B * B, C * C, StarConfig(lam)), x)
    ref = star_monomials_at((0, 2, 0), (0, 0, 2), gauss_to_sympy(x.u), gauss_to_sympy(x.v), lam)
    assert same_function(scalar_to_sympy(ours), ref)


@settings(max_examples=15)
@given(seeds)
def test_associative_random(seed):
    rng = random.Random(seed)
    p, q, r = (random_invariant(rng, 3, 3, complex_=True, with_h=True) for _ in range(3))
    assert star(star(p, q), r) == star(p, star(q, r))


@settings(max_examples=15)
@given(seeds)
def test_free_route_agrees(seed):
    rng = random.Random(seed)
    p, q = random_invariant(rng, 3, 3), random_invariant(rng, 3, 3)
    assert star_via_free(p, q) == star(p, q)


@settings(max_examples=15)
@given(seeds)
def test_numeric_is_symbolic_evaluated(seed):
    rng = random.Random(seed)
    p, q = random_invariant(rng, 3, 3, complex_=True), random_invariant(rng, 3, 3, complex_=True)
    h0 = GaussRat(Fraction(rng.randint(1, 9), 7), Fraction(rng.randint(-9, 9), 5))
    sym = star(p, q)
    num = star(p, q, StarConfig().numeric(h0))
    assert num == InvariantPoly._raw({k: Scalar(scalar_eval(c, h0)) for k, c in sym.terms.items()})


def test_numeric_poles_rejected():
    with pytest.raises(HbarAtPole):
        star(B * B, C * C, StarConfig().numeric(8))
    with pytest.raises(HbarAtPole):
        star(A, A, StarConfig().numeric(0))
    # only the coefficients actually used matter
    assert star(A, A, StarConfig().numeric(8)) == ONE


def test_poles():
    assert set(product_poles(B * B, C * C).roots) == {GaussRat(8)}
    assert product_poles(A, A).is_empty()


def test_expansion():
    assert formal_expand(A, B, 0)[0] == A * B
    assert formal_expand(A, A, 1)[1] == B * C * Fraction(1, 2)
    assert poisson(A, B) == B * Scalar(-I / 4)


@settings(max_examples=10)
@given(seeds)
def test_hermitian(seed):
    rng = random.Random(seed)
    p, q = random_invariant(rng, 3, 3, complex_=True), random_invariant(rng, 3, 3, complex_=True)
    assert hermitian_check(p, q, GaussRat(Fraction(1, 3), Fraction(2, 7)))


def _random_free(rng, gens, deg=3):
    out = FreePoly()
    for _ in range(rng.randint(1, 3)):
        e = [0, 0, 0, 0]
        for g in gens:
            e[g] = rng.randint(0, deg)
        out = out + FreePoly.monomial(tuple(e)) * Fraction(rng.randint(-4, 4) or 1)
    return out


@settings(max_examples=20)
@given(seeds)
def test_wick_separation(seed):
    # (U, Ubar, V, Vbar) positions; antiholomorphic factors pass through on the left
    rng = random.Random(seed)
    p, q = _random_free(rng, (0, 1, 2, 3), 2), _random_free(rng, (0, 1, 2, 3), 2)
    a = _random_free(rng, (1, 3))
    b = _random_free(rng, (0, 2))
    assert twist_apply(a * p, q) == a * twist_apply(p, q)
    assert twist_apply(p, q * b) == twist_apply(p, q) * b
