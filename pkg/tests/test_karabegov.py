import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from s2star.errors import NoPreimageWithinDegree, NotTraceFree
from s2star.karabegov import (
    ChartFunction,
    KarabegovConfig,
    L_map,
    L_map_chart,
    Opl,
    Opr,
    chart_point,
    chart_to_abc,
    fundamental_field,
    karabegov_star,
    kernel_from,
    lie_derivative_identity_check,
    opl,
    opr,
    pbw_monomials,
    select_orientation,
    solve_preimage,
)
from s2star.orbit import InvariantPoly, spread_points
from s2star.scalars import Scalar
from s2star.star import star
from s2star.suites import abc_monomials, random_invariant
from s2star.uea import EnvElement, antipode, bracket, hbar_weight, pbw_mul, s_function

A, B, C = (InvariantPoly.generators()[n] for n in "ABC")
CFG = KarabegovConfig(Fraction(8)).resolved()
hb = Scalar.hbar()


def test_orientation_is_unique():
    assert select_orientation(Fraction(8)) == "dzbar"
    assert select_orientation(Fraction(3)) == "dzbar"


def test_chart_round_trip():
    for m in abc_monomials(4):
        p = InvariantPoly.monomial(*m)
        assert chart_to_abc(ChartFunction.from_invariant(p)) == p


def test_preimages():
    assert solve_preimage(A, 1, CFG) == EnvElement.gen("H") * (hb / 8)
    assert L_map(EnvElement.gen("H"), CFG) == A * (8 / hb)
    with pytest.raises(NoPreimageWithinDegree):
        solve_preimage(A * A * B, 1, CFG)


@pytest.mark.parametrize("m", pbw_monomials(3))
def test_two_routes_to_L(m):
    u = EnvElement.mono(*m)
    assert L_map_chart(u, CFG) == L_map(u, CFG)


def test_agreement_examples():
    for p, q in ((A, A), (B, C), (C, B), (A * B, C)):
        assert karabegov_star(p, q, CFG) == star(p, q)


@settings(max_examples=10)
@given(st.integers(0, 10**6))
def test_agreement_random(seed):
    rng = random.Random(seed)
    p, q = random_invariant(rng, 2, 2, complex_=True), random_invariant(rng, 3, 3, complex_=True)
    assert karabegov_star(p, q, CFG) == star(p, q)


def test_L_is_multiplicative():
    for m1 in pbw_monomials(2):
        for m2 in pbw_monomials(2):
            u, v = EnvElement.mono(*m1), EnvElement.mono(*m2)
            assert L_map(pbw_mul(u, v), CFG) == star(L_map(u, CFG), L_map(v, CFG))


def test_kernel_is_an_ideal():
    kernel = kernel_from(B * C, 2, CFG)
    assert kernel
    for k in kernel:
        assert not L_map(k, CFG)
        for z in "XYH":
            g = EnvElement.gen(z)
            assert not L_map(pbw_mul(g, k), CFG)
            assert not L_map(pbw_mul(k, g), CFG)


def _comm(op, z, w, f):
    return op(z, op(w, f, CFG), CFG) - op(w, op(z, f, CFG), CFG)


def test_operators_represent_sl2():
    f = ChartFunction.from_invariant(A * B + C * 2)
    for z in "XYH":
        for w in "XYH":
            br = bracket(z, w)
            for op in (opl, opr):
                rhs = ChartFunction.constant(0)
                for name, c in br.items():
                    rhs = rhs + op(name, f, CFG) * c
                assert _comm(op, z, w, f) == rhs
            assert opl(z, opr(w, f, CFG), CFG) == opr(w, opl(z, f, CFG), CFG)


def test_s_identity():
    one = ChartFunction.constant(1)
    s = hbar_weight(8)
    pts = [k for k in spread_points(6) if k.u][:4]
    for m in pbw_monomials(3):
        u = EnvElement.mono(*m)
        f = Opl(u, one, CFG)
        for k in pts:
            assert f.at(chart_point(k)) == s_function(u, k, s)
        assert Opl(u, one, CFG) == Opr(antipode(u), one, CFG)


def test_fundamental_fields():
    with pytest.raises(NotTraceFree):
        fundamental_field([[1, 0], [0, 0]])


@pytest.mark.parametrize("length", [1, 2, 3, 4])
def test_lie_derivative_identities(length):
    for m in pbw_monomials(3):
        u = EnvElement.mono(*m)
        assert lie_derivative_identity_check(u, "X" * length, "left")
        assert lie_derivative_identity_check(u, "Y" * length, "right")
    with pytest.raises(ValueError):
        lie_derivative_identity_check(EnvElement.gen("X"), "XY", "left")
