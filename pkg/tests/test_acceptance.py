"""Acceptance criteria, one test and one printed PASS/FAIL line each.

Lines are also collected and repeated in the terminal summary.
"""

from fractions import Fraction

import pytest

from conftest import ACCEPTANCE_LINES
from oracles import gauss_to_sympy, same_function, scalar_to_sympy, star_monomials_at
from s2star import suites
from s2star.orbit import InvariantPoly, spread_points
from s2star.star import commutator, star
from s2star.topology import scalar_at_point

SEED = suites.DEFAULT_SEED


def record(number, res):
    line = f"{'PASS' if res.passed else 'FAIL'} [{number:2d}] {res.name}: {res.detail} ({res.seconds:.1f}s)"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert res.passed, res.failures[:3]


def _oracle_identities():
    # same identities, evaluated at group points by the independent sympy twist
    mono = InvariantPoly.monomial
    A, B, C = mono(1, 0, 0), mono(0, 1, 0), mono(0, 0, 1)
    cases = {
        "A*A": (star(A, A), [((1, 0, 0), (1, 0, 0), 1)]),
        "[A,B]": (commutator(A, B), [((1, 0, 0), (0, 1, 0), 1), ((0, 1, 0), (1, 0, 0), -1)]),
        "[B,C]": (commutator(B, C), [((0, 1, 0), (0, 0, 1), 1), ((0, 0, 1), (0, 1, 0), -1)]),
        "[A,C]": (commutator(A, C), [((1, 0, 0), (0, 0, 1), 1), ((0, 0, 1), (1, 0, 0), -1)]),
    }
    bad = []
    for k in spread_points(3):
        u, v = gauss_to_sympy(k.u), gauss_to_sympy(k.v)
        for name, (ours, terms) in cases.items():
            ref = sum(s * star_monomials_at(m1, m2, u, v, 8) for m1, m2, s in terms)
            if not same_function(scalar_to_sympy(scalar_at_point(ours, k)), ref):
                bad.append((name, str(k)))
    return bad


def test_01_projection_identity():
    record(1, suites.projection_identity(12))


def test_02_pairing_table():
    record(2, suites.pairing_table(12))


def test_03_twist_coefficients():
    record(3, suites.twist_coefficients(12))


def test_04_product_identities():
    res = suites.product_identities()
    bad = _oracle_identities()
    res.passed = res.passed and not bad
    res.failures += bad
    res.detail += "; matches the independent twist oracle at 3 points"
    record(4, res)


def test_05_associativity():
    record(5, suites.associativity(SEED, total_degree=3, random_triples=50, random_degree=4))


def test_06_hermiticity():
    record(6, suites.hermiticity(SEED, cases=10))


def test_07_k_invariance():
    record(7, suites.k_invariance(elements=20, max_degree=3))


def test_08_expansion_limits():
    record(8, suites.expansion_limits(SEED, max_degree=3, random_triples=50))


def test_09_agreement():
    record(9, suites.agreement(total_degree=3, s_degree=4, points=10, lie_length=4))


def test_10_continuity():
    record(10, suites.continuity(D=12, Rs=(0, 1), C=1, center=Fraction(1, 2), radius=Fraction(1, 4)))


def test_11_quotient_equivalence():
    record(11, suites.quot_equivalence(D=8, Rs=(0, 1), Cs=(1, 2)))


def test_12_pole_containment():
    record(12, suites.pole_containment(max_degree=6))


def test_13_holomorphy():
    record(13, suites.holomorphy(SEED, pairs=10, samples=5))
