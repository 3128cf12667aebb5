import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from s2star.errors import DiscTouchesNaturals, EstimateViolation, HbarAtPole, NotInvariant
from s2star.interval import Interval
from s2star.orbit import FreePoly, InvariantPoly, embed, reduce_sphere, spread_points
from s2star.scalars import GaussRat, Scalar
from s2star.star import star
from s2star.suites import random_invariant
from s2star.topology import (
    FreeABC,
    SeminormParams,
    continuity_report,
    disc_avoids_omega,
    disc_constants,
    evaluation_bound_check,
    holomorphy_probe,
    lift_star,
    pole_approach,
    quot_equivalence_report,
    quot_map_f,
    quot_map_g,
    seminorm,
)

G = FreePoly.generators()
U, Ub, V, Vb = G["U"], G["Ubar"], G["V"], G["Vbar"]
A, B, C = (InvariantPoly.generators()[n] for n in "ABC")
seeds = st.integers(0, 10**6)


def _free(rng, deg=3, terms=3):
    out = FreePoly()
    for _ in range(rng.randint(1, terms)):
        m = tuple(rng.randint(0, deg) for _ in range(4))
        out = out + FreePoly.monomial(m) * GaussRat(Fraction(rng.randint(-5, 5)), Fraction(rng.randint(-5, 5)))
    return out


def test_seminorm_examples():
    assert seminorm(U * Ub, SeminormParams(1, 2)) == Interval(8)
    iv = seminorm(A * GaussRat(1, 1), SeminormParams(0, 1, "ABC"))
    assert iv.lo**2 <= 2 <= iv.hi**2 and not iv.is_exact()
    assert seminorm(FreePoly()) == Interval(0)


@given(seeds)
def test_seminorm_triangle_and_homogeneity(seed):
    rng = random.Random(seed)
    p, q = _free(rng), _free(rng)
    sp = SeminormParams(Fraction(rng.randint(0, 2)), Fraction(rng.randint(1, 3)))
    assert seminorm(p + q, sp).lo <= (seminorm(p, sp) + seminorm(q, sp)).hi
    t = GaussRat(Fraction(3, 5), Fraction(4, 5))  # |t| = 1
    st_, s_ = seminorm(p * t, sp), seminorm(p, sp)
    assert st_.lo <= s_.hi and s_.lo <= st_.hi
    s2 = seminorm(p * Fraction(2), sp)
    s1 = seminorm(p, sp)
    assert s2.lo <= 2 * s1.hi and 2 * s1.lo <= s2.hi


@given(seeds)
def test_submultiplicative(seed):
    rng = random.Random(seed)
    p, q = _free(rng), _free(rng)
    sp = SeminormParams(0, 1)
    assert seminorm(p * q, sp).lo <= (seminorm(p, sp) * seminorm(q, sp)).hi


def test_lift_star_examples():
    hb = Scalar.hbar()
    assert lift_star(U, Ub) == U * Ub + V * Vb * (hb / 8)
    q = U * V * Vb + Ub
    assert lift_star(FreePoly.constant(1), q) == q


@settings(max_examples=25)
@given(seeds)
def test_lift_star_descends(seed):
    rng = random.Random(seed)
    p, q = random_invariant(rng, 3, 3, complex_=True), random_invariant(rng, 3, 3, complex_=True)
    assert reduce_sphere(lift_star(embed(p), embed(q))) == embed(star(p, q))


def test_disc_constants():
    d = disc_constants(GaussRat(Fraction(1, 2)), Fraction(1, 4), 1)
    assert d.C_minus.hi <= Fraction(1, 4)
    far = disc_constants(GaussRat(-10), Fraction(1), 1)
    assert far.C_minus_raw.lo >= 9
    d12 = disc_constants(GaussRat(Fraction(1, 2)), Fraction(1, 4), 12)
    assert d12.C_minus.hi <= d12.C_plus.lo
    with pytest.raises(DiscTouchesNaturals):
        disc_constants(GaussRat(Fraction(3, 2)), Fraction(1, 2), 3)


def test_disc_bounds_hold_on_sample_points():
    from math import factorial

    d = disc_constants(GaussRat(Fraction(1, 2), Fraction(1, 10)), Fraction(1, 4), 6)
    for z in (GaussRat(Fraction(1, 2)), GaussRat(Fraction(3, 4)), GaussRat(Fraction(1, 2), Fraction(1, 4))):
        prod = GaussRat(1)
        for delta in range(1, 7):
            prod = prod * (z - GaussRat(delta - 1))
            assert factorial(delta) ** 2 * d.C_minus.lo ** (2 * delta) <= prod.abs2()
            assert prod.abs2() <= factorial(delta) ** 2 * d.C_plus.hi ** (2 * delta)


def test_continuity_small():
    disc = disc_constants(GaussRat(Fraction(1, 2)), Fraction(1, 4), 4)
    rep = continuity_report(4, SeminormParams(0, 1), disc)
    assert rep.passed and rep.validated_pairs > 0
    first = rep.records[0]
    assert first["d"] == 0 and first["d2"] == 0 and first["passed"]
    assert rep.summary()["product_constant_passes"] is False


def test_continuity_violation_is_loud():
    # a deliberately wrong C_- shrinks C' below what the products need
    from dataclasses import replace

    disc = disc_constants(GaussRat(Fraction(1, 2)), Fraction(1, 4), 4)
    bogus = replace(disc, C_minus=Interval(1000))
    with pytest.raises(EstimateViolation):
        continuity_report(4, SeminormParams(0, 1), bogus)
    rep = continuity_report(4, SeminormParams(0, 1), bogus, raise_on_fail=False)
    assert not rep.passed


def test_quot_maps():
    assert quot_map_f(FreeABC.gen("A")) == U * Ub - V * Vb
    assert quot_map_g(U * Ub).reduced() == (InvariantPoly.constant(1) + A) * Fraction(1, 2)
    assert quot_map_g(U * Vb).reduced() == C
    with pytest.raises(NotInvariant):
        quot_map_g(U * U)
    assert quot_equivalence_report(4, 1, 0).passed


@given(seeds)
def test_evaluation_bound(seed):
    rng = random.Random(seed)
    k = spread_points(8)[rng.randrange(8)]
    assert evaluation_bound_check(_free(rng), k)
    assert evaluation_bound_check(random_invariant(rng, 4, 4, complex_=True), k)


def test_holomorphy():
    x = spread_points(3)[1]
    center, radius = GaussRat(Fraction(1, 3), Fraction(1, 5)), Fraction(1, 10)
    assert disc_avoids_omega(center, radius, 8)
    assert holomorphy_probe(A, A, x, center, radius, 5).passed
    assert holomorphy_probe(B * B, C * C, x, center, radius, 5).passed
    const = holomorphy_probe(InvariantPoly.constant(3), InvariantPoly.constant(2), x, center, radius, 3)
    assert const.symbolic == Scalar(6)
    with pytest.raises(HbarAtPole):
        holomorphy_probe(A, A, x, GaussRat(4), Fraction(1, 10), 3)


def test_pole_blow_up():
    x = spread_points(3)[1]
    vals = [abs(v.abs2()) for _, v in pole_approach(B * B, C * C, x, 8, 4)]
    assert all(b > 10 * a for a, b in zip(vals, vals[1:]))
