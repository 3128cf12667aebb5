"""Property suites shared by the ``check`` command and the acceptance tests.

Each suite returns a ``SuiteResult``; sizes are parameters so the CLI can run
quick versions while the acceptance tests run the full ones.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from .karabegov import (
    ChartFunction,
    KarabegovConfig,
    Opl,
    chart_point,
    karabegov_star,
    lie_derivative_identity_check,
    pbw_monomials,
)
from .orbit import InvariantPoly, group_action, spread_points
from .scalars import I, GaussRat, Scalar, scalar_poles
from .star import StarConfig, commutator, formal_expand, hermitian_check, poisson, product_poles, star
from .topology import (
    SeminormParams,
    continuity_report,
    disc_avoids_omega,
    disc_constants,
    holomorphy_probe,
    quot_equivalence_report,
)
from .uea import (
    DEFAULT_LAMBDA,
    EnvElement,
    hbar_weight,
    pairing,
    project0,
    s_function,
    twist,
    twist_closed_form,
)

DEFAULT_SEED = 20240611


@dataclass
class SuiteResult:
    name: str
    passed: bool
    detail: str = ""
    failures: list = field(default_factory=list)
    seconds: float = 0.0

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"{mark} {self.name}: {self.detail} ({self.seconds:.1f}s)"


def _timed(name, fn):
    t0 = time.perf_counter()
    passed, detail, failures = fn()
    return SuiteResult(name, passed, detail, failures, time.perf_counter() - t0)


def abc_monomials(max_degree: int):
    return [(a, b, c) for a in (0, 1) for b in range(max_degree + 1) for c in range(max_degree + 1) if a + b + c <= max_degree]


def mono(m) -> InvariantPoly:
    return InvariantPoly.monomial(*m)


def random_coefficient(rng: random.Random, complex_: bool = False, with_h: bool = False) -> Scalar:
    re = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
    im = Fraction(rng.randint(-5, 5), rng.randint(1, 4)) if complex_ else Fraction(0)
    c = Scalar(GaussRat(re, im))
    if not c:
        c = Scalar(1)
    if with_h and rng.random() < 0.3:
        c = c * Scalar.hbar()
    return c


def random_invariant(rng, max_degree=4, max_terms=3, complex_=False, with_h=False) -> InvariantPoly:
    ms = abc_monomials(max_degree)
    out = InvariantPoly()
    for _ in range(rng.randint(1, max_terms)):
        out = out + mono(rng.choice(ms)) * random_coefficient(rng, complex_, with_h)
    return out if out else InvariantPoly.constant(1)


def random_hbar(rng, lam=DEFAULT_LAMBDA) -> GaussRat:
    while True:
        h = GaussRat(Fraction(rng.randint(-30, 30), rng.randint(1, 12)), Fraction(rng.randint(-30, 30), rng.randint(1, 12)))
        if h and not any(h == GaussRat(Fraction(lam) / j) for j in range(1, 200)):
            return h


def omega(lam, upto: int):
    return {GaussRat(Fraction(lam) / j) for j in range(1, upto + 1)}


# -- criteria ---------------------------------------------------------------------


def projection_identity(nmax=12):
    def run():
        bad = []
        X, Y, H = EnvElement.gen("X"), EnvElement.gen("Y"), EnvElement.gen("H")
        for n in range(1, nmax + 1):
            lhs = project0((X**n) * (Y**n))
            rhs = EnvElement.scalar(Scalar(factorial(n)))
            for j in range(n):
                rhs = rhs * (H - EnvElement.scalar(Scalar(j)))
            if lhs != rhs:
                bad.append(n)
        return not bad, f"(X^n Y^n)_0 = n! H(H-1)...(H-n+1) for n <= {nmax}", bad

    return _timed("projection identity", run)


def pairing_table(nmax=12, lam=DEFAULT_LAMBDA):
    def run():
        bad = []
        s = hbar_weight(lam)
        for n in range(nmax + 1):
            expect = Scalar((-1) ** n * factorial(n))
            for j in range(n):
                expect = expect * (s - j)
            if pairing(EnvElement.mono(n, 0, 0), EnvElement.mono(0, 0, n), lam) != expect:
                bad.append(("diag", n))
            for m in range(nmax + 1):
                if m != n and pairing(EnvElement.mono(m, 0, 0), EnvElement.mono(0, 0, n), lam):
                    bad.append(("offdiag", m, n))
        return not bad, f"diagonal closed form and zero off-diagonal for n <= {nmax}", bad

    return _timed("pairing table", run)


def twist_coefficients(N=12, lam=DEFAULT_LAMBDA):
    def run():
        bad = []
        tw = twist(N, Fraction(lam))
        for n in range(N + 1):
            c = tw[n]
            if c != twist_closed_form(n, lam):
                bad.append(("closed form", n))
            ps = scalar_poles(c)
            if ps.factors or set(ps.roots) != omega(lam, n - 1):
                bad.append(("poles", n, sorted(str(r) for r in ps.roots)))
        return not bad, f"c_n closed form and pole sets for n <= {N}", bad

    return _timed("twist coefficients", run)


def product_identities(lam=DEFAULT_LAMBDA):
    def run():
        g = InvariantPoly.generators()
        A, B, C = g["A"], g["B"], g["C"]
        h = Scalar.hbar()
        L = Scalar(lam)
        one = InvariantPoly.constant(1)
        cfg = StarConfig(Fraction(lam))
        checks = {
            "A*A": (star(A, A, cfg), one - B * C * (4 * (1 - h / L))),
            "[A,B]": (commutator(A, B, cfg), B * (2 * h / L)),
            "[B,C]": (commutator(B, C, cfg), A * (h / L)),
            "[A,C]": (commutator(A, C, cfg), C * (-2 * h / L)),
            "B*C": (star(B, C, cfg), B * C + ((one + A) * Fraction(1, 2) - B * C) * (h / L)),
        }
        bad = [k for k, (x, y) in checks.items() if x != y]
        return not bad, "A*A, [A,B], [B,C], [A,C], B*C exact", bad

    return _timed("product identities", run)


def associativity(seed=DEFAULT_SEED, total_degree=3, random_triples=50, random_degree=4, lam=DEFAULT_LAMBDA):
    def run():
        cfg = StarConfig(Fraction(lam))
        bad = []
        ms = abc_monomials(total_degree)
        count = 0
        for m1 in ms:
            for m2 in ms:
                for m3 in ms:
                    if sum(m1) + sum(m2) + sum(m3) > total_degree:
                        continue
                    p, q, r = mono(m1), mono(m2), mono(m3)
                    count += 1
                    if star(star(p, q, cfg), r, cfg) != star(p, star(q, r, cfg), cfg):
                        bad.append((m1, m2, m3))
        rng = random.Random(seed)
        for _ in range(random_triples):
            p, q, r = (random_invariant(rng, random_degree, 3, complex_=True, with_h=True) for _ in range(3))
            if star(star(p, q, cfg), r, cfg) != star(p, star(q, r, cfg), cfg):
                bad.append((str(p), str(q), str(r)))
        return not bad, f"{count} monomial triples and {random_triples} random triples (seed {seed})", bad

    return _timed("associativity", run)


def hermiticity(seed=DEFAULT_SEED, cases=10, max_degree=3, lam=DEFAULT_LAMBDA):
    def run():
        rng = random.Random(seed + 1)
        cfg = StarConfig(Fraction(lam))
        bad = []
        for _ in range(cases):
            p = random_invariant(rng, max_degree, 3, complex_=True)
            q = random_invariant(rng, max_degree, 3, complex_=True)
            h = random_hbar(rng, lam)
            if not hermitian_check(p, q, h, cfg):
                bad.append((str(p), str(q), str(h)))
        return not bad, f"{cases} seeded cases", bad

    return _timed("hermiticity", run)


def _act_cached(cache, k, p):
    out = InvariantPoly()
    for m, c in p.terms.items():
        key = (k, m)
        if key not in cache:
            cache[key] = group_action(k, mono(m))
        out = out + cache[key] * c
    return out


def k_invariance(elements=20, max_degree=3, lam=DEFAULT_LAMBDA):
    def run():
        cfg = StarConfig(Fraction(lam))
        ks = spread_points(elements)
        ms = abc_monomials(max_degree)
        cache = {}
        bad = []
        for k in ks:
            for m1 in ms:
                for m2 in ms:
                    p, q = mono(m1), mono(m2)
                    lhs = _act_cached(cache, k, star(p, q, cfg))
                    rhs = star(_act_cached(cache, k, p), _act_cached(cache, k, q), cfg)
                    if lhs != rhs:
                        bad.append((str(k), m1, m2))
        return not bad, f"{len(ks)} group elements x {len(ms) ** 2} monomial pairs", bad

    return _timed("K-invariance", run)


def expansion_limits(seed=DEFAULT_SEED, max_degree=3, random_triples=50, lam=DEFAULT_LAMBDA):
    def run():
        cfg = StarConfig(Fraction(lam))
        bad = []
        ms = abc_monomials(max_degree)
        for m1 in ms:
            for m2 in ms:
                p, q = mono(m1), mono(m2)
                c0 = formal_expand(p, q, 0, cfg)[0]
                if c0 != p * q:
                    bad.append(("C0", m1, m2))
                c1 = formal_expand(p, q, 1, cfg)[1] - formal_expand(q, p, 1, cfg)[1]
                if poisson(p, q, cfg) * Scalar(I) != c1:
                    bad.append(("C1", m1, m2))

        def pb(a, b):
            return poisson(a, b, cfg)

        g = InvariantPoly.generators()
        gens = [g["A"], g["B"], g["C"]]
        rng = random.Random(seed + 2)
        triples = [(a, b, c) for a in gens for b in gens for c in gens]
        triples += [tuple(random_invariant(rng, 3, 3) for _ in range(3)) for _ in range(random_triples)]
        for a, b, c in triples:
            if pb(a, b * c) != pb(a, b) * c + b * pb(a, c):
                bad.append(("Leibniz", str(a), str(b), str(c)))
            if pb(a, pb(b, c)) + pb(b, pb(c, a)) + pb(c, pb(a, b)):
                bad.append(("Jacobi", str(a), str(b), str(c)))
            if pb(a, b) + pb(b, a):
                bad.append(("antisymmetry", str(a), str(b)))
        return not bad, f"C0, C1 on degree <= {max_degree}; Leibniz/Jacobi on generators + {random_triples} triples", bad

    return _timed("expansion limits", run)


def agreement(total_degree=3, s_degree=4, points=10, lie_length=4, lie_degree=3, lam=DEFAULT_LAMBDA):
    def run():
        kcfg = KarabegovConfig(Fraction(lam)).resolved()
        scfg = StarConfig(Fraction(lam))
        bad = []
        ms = abc_monomials(total_degree)
        pairs = 0
        for m1 in ms:
            for m2 in ms:
                if sum(m1) + sum(m2) > total_degree:
                    continue
                pairs += 1
                p, q = mono(m1), mono(m2)
                if karabegov_star(p, q, kcfg) != star(p, q, scfg):
                    bad.append(("agree", m1, m2))
        s = hbar_weight(lam)
        pts = [k for k in spread_points(points + 4) if k.u][:points]
        one = ChartFunction.constant(1)
        for m in pbw_monomials(s_degree):
            u = EnvElement.mono(*m)
            f = Opl(u, one, kcfg)
            for k in pts:
                if f.at(chart_point(k)) != s_function(u, k, s):
                    bad.append(("s-identity", m, str(k)))
        lie = 0
        for m in pbw_monomials(lie_degree):
            u = EnvElement.mono(*m)
            for L in range(1, lie_length + 1):
                lie += 2
                if not lie_derivative_identity_check(u, ("X",) * L, "left", lam):
                    bad.append(("lie-left", m, L))
                if not lie_derivative_identity_check(u, ("Y",) * L, "right", lam):
                    bad.append(("lie-right", m, L))
        return (
            not bad,
            f"{pairs} product pairs, s-identity on degree <= {s_degree} at {len(pts)} points, {lie} derivative identities",
            bad,
        )

    return _timed("agreement", run)


def continuity(D=12, Rs=(0, 1), C=1, center=Fraction(1, 2), radius=Fraction(1, 4), lam=DEFAULT_LAMBDA):
    def run():
        disc = disc_constants(center, radius, D)
        bad = []
        notes = []
        for R in Rs:
            rep = continuity_report(D, SeminormParams(R, C), disc, StarConfig(Fraction(lam)), raise_on_fail=False)
            notes.append(f"R={R}: {rep.pair_count} pairs in {len(rep.records)} classes")
            if not rep.passed:
                bad.extend(r for r in rep.records if not r["passed"])
        return not bad, "; ".join(notes), bad[:5]

    return _timed("continuity", run)


def quot_equivalence(D=8, Rs=(0, 1), Cs=(1, 2)):
    def run():
        bad = []
        for R in Rs:
            for C in Cs:
                rep = quot_equivalence_report(D, C, R)
                bad.extend(r for r in rep.records if not r["passed"])
        return not bad, f"degree <= {D}, R in {list(Rs)}, C in {list(Cs)}", bad[:5]

    return _timed("quotient/reduction equivalence", run)


def pole_containment(max_degree=6, lam=DEFAULT_LAMBDA):
    def run():
        cfg = StarConfig(Fraction(lam))
        allowed = omega(lam, 4 * max_degree + 4)
        bad = []
        ms = abc_monomials(max_degree)
        x = spread_points(3)[1]
        for m1 in ms:
            for m2 in ms:
                p, q = mono(m1), mono(m2)
                ps = product_poles(p, q, cfg)
                if ps.factors or not set(ps.roots) <= allowed:
                    bad.append(("poles", m1, m2))
                prod = star(p, q, cfg)
                if not all(c.is_regular_at_zero() for c in prod.terms.values()):
                    bad.append(("regular", m1, m2))
                from .topology import scalar_at_point

                if not scalar_at_point(prod, x).is_regular_at_zero():
                    bad.append(("regular at x", m1, m2))
        return not bad, f"{len(ms) ** 2} monomial pairs of degree <= {max_degree}", bad

    return _timed("pole containment", run)


def holomorphy(seed=DEFAULT_SEED, pairs=10, samples=5, lam=DEFAULT_LAMBDA):
    def run():
        rng = random.Random(seed + 3)
        bad = []
        xs = spread_points(pairs)
        done = 0
        while done < pairs:
            center = GaussRat(Fraction(rng.randint(1, 40), 7), Fraction(rng.randint(-20, 20), 9))
            radius = Fraction(1, rng.randint(8, 20))
            if not disc_avoids_omega(center, radius, lam):
                continue
            p = random_invariant(rng, 3, 2, complex_=True)
            q = random_invariant(rng, 3, 2, complex_=True)
            rep = holomorphy_probe(p, q, xs[done], center, radius, samples, lam)
            if not rep.passed or len(rep.records) != samples:
                bad.append((str(p), str(q), str(center)))
            done += 1
        return not bad, f"{pairs} pairs x {samples} samples", bad

    return _timed("holomorphy probe", run)


QUICK = {
    "projection identity": lambda seed: projection_identity(6),
    "pairing table": lambda seed: pairing_table(6),
    "twist coefficients": lambda seed: twist_coefficients(6),
    "product identities": lambda seed: product_identities(),
    "associativity": lambda seed: associativity(seed, 2, 5, 3),
    "hermiticity": lambda seed: hermiticity(seed, 3),
    "K-invariance": lambda seed: k_invariance(3, 2),
    "expansion limits": lambda seed: expansion_limits(seed, 2, 5),
    "agreement": lambda seed: agreement(2, 2, 3, 2, 2),
    "continuity": lambda seed: continuity(6),
    "quotient/reduction equivalence": lambda seed: quot_equivalence(4),
    "pole containment": lambda seed: pole_containment(3),
    "holomorphy probe": lambda seed: holomorphy(seed, 3, 3),
}

FULL = {
    "projection identity": lambda seed: projection_identity(12),
    "pairing table": lambda seed: pairing_table(12),
    "twist coefficients": lambda seed: twist_coefficients(12),
    "product identities": lambda seed: product_identities(),
    "associativity": lambda seed: associativity(seed),
    "hermiticity": lambda seed: hermiticity(seed),
    "K-invariance": lambda seed: k_invariance(),
    "expansion limits": lambda seed: expansion_limits(seed),
    "agreement": lambda seed: agreement(),
    "continuity": lambda seed: continuity(),
    "quotient/reduction equivalence": lambda seed: quot_equivalence(),
    "pole containment": lambda seed: pole_containment(),
    "holomorphy probe": lambda seed: holomorphy(seed),
}


def run_all(seed=DEFAULT_SEED, full=False):
    table = FULL if full else QUICK
    return [fn(seed) for fn in table.values()]
