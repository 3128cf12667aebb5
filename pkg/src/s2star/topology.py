"""T_R seminorms and certified checks of the continuity estimates.

All inequalities are decided with ``Interval`` enclosures: a verdict is only
reported once the enclosures separate, otherwise precision is raised.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, factorial

from .errors import DiscTouchesNaturals, EstimateViolation, HbarAtPole, NotInvariant
from .interval import DEFAULT_PREC, Interval, abs_gauss, certify_le
from .orbit import (
    FreePoly,
    InvariantPoly,
    _add_into,
    embed_generators,
    evaluate,
    reduce_invariant,
    reduce_sphere,
    to_ABC,
)
from .scalars import GaussRat, Scalar, scalar_eval
from .star import StarConfig, product_poles, star, twist_apply
from .uea import DEFAULT_LAMBDA, GroupElement

BASES = ("UV", "ABC", "f")


@dataclass(frozen=True)
class SeminormParams:
    R: Fraction = Fraction(0)
    C: Fraction = Fraction(1)
    basis: str = "UV"
    lam: Fraction = DEFAULT_LAMBDA

    def __post_init__(self):
        if Fraction(self.R) < 0:
            raise ValueError("R must be nonnegative")
        if Fraction(self.C) < 1:
            raise ValueError("C must be at least 1")
        if self.basis not in BASES:
            raise ValueError(f"basis must be one of {BASES}")


class FreeABC:
    """Polynomial in A, B, C without the sphere relation."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    @classmethod
    def constant(cls, c):
        return cls({(0, 0, 0): c})

    @classmethod
    def gen(cls, name):
        return cls({{"A": (1, 0, 0), "B": (0, 1, 0), "C": (0, 0, 1)}[name]: Fraction(1)})

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            _add_into(out, k, v)
        return FreeABC(out)

    def __sub__(self, other):
        return self + other * -1

    def __mul__(self, other):
        if not isinstance(other, FreeABC):
            return FreeABC({k: v * other for k, v in self.terms.items()})
        out = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                _add_into(out, (k1[0] + k2[0], k1[1] + k2[1], k1[2] + k2[2]), v1 * v2)
        return FreeABC(out)

    def __pow__(self, n):
        out = FreeABC.constant(Fraction(1))
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        return isinstance(other, FreeABC) and self.terms == other.terms

    def reduced(self) -> InvariantPoly:
        return reduce_invariant({k: Scalar(v) for k, v in self.terms.items()})

    def __repr__(self):
        return f"FreeABC({self.terms})"


def _abs_coeff(c, prec):
    if isinstance(c, Scalar):
        if not c.is_constant():
            raise ValueError("seminorms need numeric coefficients; substitute h first")
        c = c.constant_value()
    return abs_gauss(c, prec)


def _weight(n: int, R, C, prec) -> Interval:
    """(n!)^R C^n."""
    f = Interval(factorial(n)).rpow(Fraction(R), prec) if R else Interval(1)
    c = C if isinstance(C, Interval) else Interval(Fraction(C))
    return f * c**n


def seminorm(p, sp: SeminormParams = SeminormParams(), prec: int = DEFAULT_PREC) -> Interval:
    """Enclosure of sum |a_I| (|I|!)^R C^|I| over the monomials of p."""
    scale = Fraction(1)
    if sp.basis == "f":
        # A = f_H / (i lam) and so on, so each generator carries 1/lam
        scale = 1 / Fraction(sp.lam)
    total = Interval(0)
    weights = {}
    for m, c in p.terms.items():
        n = sum(m)
        if n not in weights:
            weights[n] = _weight(n, sp.R, sp.C, prec)
        total = total + _abs_coeff(c, prec) * weights[n] * (scale**n)
    return total


def lift_star(p: FreePoly, q: FreePoly, cfg: StarConfig = StarConfig()) -> FreePoly:
    """The twist applied on free polynomials, before any quotient."""
    return twist_apply(p, q, cfg)


# -- disc constants -------------------------------------------------------------


@dataclass(frozen=True)
class DiscConstants:
    center: GaussRat
    radius: Fraction
    delta_max: int
    lower: tuple  # enclosures of |z0 - j| - r, j < delta_max
    upper: tuple  # enclosures of |z0 - j| + r
    C_minus_raw: Interval
    C_plus_raw: Interval
    C_minus: Interval  # min(C_minus_raw, 1)
    C_plus: Interval  # max(C_plus_raw, 1)

    def cn_upper(self, n: int) -> Fraction:
        """Upper bound of 1 / (n! |z (z-1) ... (z-n+1)|) over the disc."""
        prod = Interval(factorial(n))
        for j in range(n):
            prod = prod * self.lower[j]
        return prod.reciprocal().hi

    def contains(self, z) -> bool:
        z = GaussRat.coerce(z)
        return (z - self.center).abs2() <= self.radius**2


def disc_constants(z0, r, delta_max: int, prec: int = DEFAULT_PREC) -> DiscConstants:
    z0 = GaussRat.coerce(z0)
    r = Fraction(r)
    if r < 0:
        raise ValueError("radius must be nonnegative")
    top = max(0, ceil(z0.re + r)) + 1
    for j in range(top + 1):
        if (z0 - j).abs2() <= r * r:
            raise DiscTouchesNaturals(f"disc around {z0} of radius {r} meets {j}")
    n = max(delta_max, 1)
    lower, upper = [], []
    for j in range(n):
        d = abs_gauss(z0 - j, prec)
        lo = d - r
        if lo.lo <= 0:
            raise DiscTouchesNaturals(f"could not separate the disc from {j} at precision {prec}")
        lower.append(lo)
        upper.append(d + r)
    cm = cp = None
    plo, pup = Interval(1), Interval(1)
    for delta in range(1, n + 1):
        plo = plo * lower[delta - 1]
        pup = pup * upper[delta - 1]
        qm = (plo / factorial(delta)).root(delta, prec)
        qp = (pup / factorial(delta)).root(delta, prec)
        cm = qm if cm is None else cm.min(qm)
        cp = qp if cp is None else cp.max(qp)
    return DiscConstants(
        center=z0,
        radius=r,
        delta_max=n,
        lower=tuple(lower),
        upper=tuple(upper),
        C_minus_raw=cm,
        C_plus_raw=cp,
        C_minus=cm.min(Interval(1)),
        C_plus=cp.max(Interval(1)),
    )


# -- continuity of the lifted product ---------------------------------------------


def _falling(x: int, n: int) -> int:
    out = 1
    for j in range(n):
        out *= x - j
    return out


def _yt_norm(k: int, n: int) -> int:
    """l1 norm of Y~^n applied to a monomial with k_up = k (Vandermonde)."""
    return _falling(k, n)


@dataclass
class ContinuityReport:
    D: int
    R: Fraction
    C: Fraction
    C_minus: Interval
    C_prime: Interval
    C_prime_product: Interval  # 2^(2+R) C C_-, the constant with C_- as a factor
    records: list = field(default_factory=list)
    validated_pairs: int = 0
    runtime: float = 0.0
    product_constant_passes: bool | None = None

    @property
    def passed(self) -> bool:
        return all(r["passed"] for r in self.records)

    @property
    def pair_count(self) -> int:
        return sum(r["pairs"] for r in self.records)

    def summary(self) -> dict:
        return {
            "D": self.D,
            "R": str(self.R),
            "C": str(self.C),
            "C_minus": [str(self.C_minus.lo), str(self.C_minus.hi)],
            "C_prime": [str(self.C_prime.lo), str(self.C_prime.hi)],
            "classes": len(self.records),
            "pairs": self.pair_count,
            "validated_pairs": self.validated_pairs,
            "passed": self.passed,
            "product_constant_passes": self.product_constant_passes,
            "runtime_s": round(self.runtime, 3),
        }


def _class_lhs(d1, k1, d2, k2, cn_up, R, C, prec):
    s = Fraction(0)
    for n in range(min(k1, k2) + 1):
        s += cn_up[n] * _yt_norm(k1, n) * _falling(k2, n)
    return _weight(d1 + d2, R, C, prec) * s


def continuity_report(
    D: int,
    sp: SeminormParams,
    disc: DiscConstants,
    cfg: StarConfig = StarConfig(),
    validate_upto: int = 2,
    raise_on_fail: bool = True,
    prec: int = DEFAULT_PREC,
) -> ContinuityReport:
    """Check (C||.||)_R(p *^ q) <= (C'||.||)_R(p) (C'||.||)_R(q) on all monomials.

    Monomial pairs are grouped by (degree, k_up) of p and (degree, k_down)
    of q, on which the certified bound of the left side depends.  Each
    record covers every monomial pair in its class.
    """
    t0 = time.perf_counter()
    R, C = Fraction(sp.R), Fraction(sp.C)
    two_pow = Interval(2) ** 2 * Interval(2).rpow(R, prec)
    cm_hi = Interval(disc.C_minus.hi)
    c_prime = (two_pow * C / cm_hi)
    c_prime_product = two_pow * C * disc.C_minus
    cn_up = [disc.cn_upper(n) if n <= disc.delta_max else None for n in range(D + 1)]
    if any(c is None for c in cn_up):
        disc = disc_constants(disc.center, disc.radius, D, prec)
        cn_up = [disc.cn_upper(n) for n in range(D + 1)]
    # RHS lower bounds with the strict constant, per degree
    w = [_weight(d, R, Interval(c_prime.lo), prec) for d in range(D + 1)]
    w_product = [_weight(d, R, Interval(c_prime_product.lo), prec) for d in range(D + 1)]
    report = ContinuityReport(D, R, C, disc.C_minus, c_prime, c_prime_product)
    product_ok = True
    for d1 in range(D + 1):
        for k1 in range(d1 + 1):
            n1 = (k1 + 1) * (d1 - k1 + 1)
            for d2 in range(D + 1):
                for k2 in range(d2 + 1):
                    n2 = (k2 + 1) * (d2 - k2 + 1)
                    lhs = _class_lhs(d1, k1, d2, k2, cn_up, R, C, prec)
                    rhs = w[d1] * w[d2]
                    ok = lhs.certainly_le(rhs)
                    p = prec
                    while ok is None and p < 1024:
                        p *= 2
                        lhs = _class_lhs(d1, k1, d2, k2, cn_up, R, C, p)
                        rhs = _weight(d1, R, Interval(c_prime.lo), p) * _weight(d2, R, Interval(c_prime.lo), p)
                        ok = lhs.certainly_le(rhs)
                    rec = {
                        "d": d1,
                        "k_up": k1,
                        "d2": d2,
                        "k_down2": k2,
                        "pairs": n1 * n2,
                        "lhs": [str(lhs.lo), str(lhs.hi)],
                        "rhs": [str(rhs.lo), str(rhs.hi)],
                        "passed": ok is True,
                    }
                    report.records.append(rec)
                    if product_ok and lhs.certainly_le(w_product[d1] * w_product[d2]) is not True:
                        product_ok = False
                    if ok is not True and raise_on_fail:
                        raise EstimateViolation(rec)
    report.product_constant_passes = product_ok
    report.validated_pairs = _validate_classes(min(validate_upto, D), sp, disc, cfg, cn_up, report, prec)
    report.runtime = time.perf_counter() - t0
    return report


def free_monomials(d: int):
    return [(a, b, c, d - a - b - c) for a in range(d + 1) for b in range(d + 1 - a) for c in range(d + 1 - a - b)]


def _validate_classes(Dv, sp, disc, cfg, cn_up, report, prec):
    """Compare the class bound with exact lifted products at the disc centre."""
    if Dv < 0:
        return 0
    z0 = disc.center
    if not z0:
        return 0
    h0 = GaussRat(Fraction(cfg.lam)) / z0
    ncfg = StarConfig(cfg.lam, h0)
    count = 0
    R, C = Fraction(sp.R), Fraction(sp.C)
    for d1 in range(Dv + 1):
        for m1 in free_monomials(d1):
            p = FreePoly.monomial(m1)
            for d2 in range(Dv + 1):
                for m2 in free_monomials(d2):
                    q = FreePoly.monomial(m2)
                    val = seminorm(lift_star(p, q, ncfg), SeminormParams(R, C), prec)
                    bound = _class_lhs(d1, m1[0] + m1[2], d2, m2[1] + m2[3], cn_up, R, C, prec)
                    if val.certainly_le(bound) is not True:
                        rec = {"pair": [list(m1), list(m2)], "exact": str(val), "class_bound": str(bound)}
                        raise EstimateViolation(rec)
                    count += 1
    return count


# -- quotient and reduction topologies -------------------------------------------


def quot_map_f(p) -> FreePoly:
    """A, B, C replaced by their defining products (no reduction)."""
    gens = embed_generators()
    out = FreePoly()
    terms = p.terms
    for (a, b, c), v in terms.items():
        out = out + (gens["A"] ** a) * (gens["B"] ** b) * (gens["C"] ** c) * v
    return out


def quot_map_g(p: FreePoly) -> FreeABC:
    """Monomial-wise min-exponent formula on right-invariant monomials."""
    plus = (FreeABC.constant(Fraction(1)) + FreeABC.gen("A")) * Fraction(1, 2)
    minus = (FreeABC.constant(Fraction(1)) - FreeABC.gen("A")) * Fraction(1, 2)
    B, C = FreeABC.gen("B"), FreeABC.gen("C")
    out = FreeABC()
    for (al, be, ga, de), v in p.terms.items():
        if al + ga != be + de:
            raise NotInvariant(f"monomial {(al, be, ga, de)} is not right invariant")
        ad = min(al, de)
        term = (plus ** (al - ad)) * (minus ** (de - ad)) * (B ** min(be, ga)) * (C**ad)
        out = out + term * v
    return out


def abc_monomials(d: int):
    return [(a, b, d - a - b) for a in range(d + 1) for b in range(d + 1 - a)]


def invariant_monomials(d: int):
    return [m for m in free_monomials(d) if m[0] + m[2] == m[1] + m[3]]


@dataclass
class QuotReport:
    D: int
    R: Fraction
    C: Fraction
    records: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r["passed"] for r in self.records)


def quot_equivalence_report(D: int, C=1, R=0, prec: int = DEFAULT_PREC) -> QuotReport:
    C, R = Fraction(C), Fraction(R)
    rep = QuotReport(D, R, C)
    uv = SeminormParams(R, C, "UV")
    abc2 = SeminormParams(2 * R, C, "ABC")
    for d in range(D + 1):
        cf = Interval(2).rpow(2 * R + 1, prec) * C * C
        for m in abc_monomials(d):
            img = quot_map_f(FreeABC({m: Fraction(1)}))
            lhs = seminorm(img, uv, prec)
            rhs = _weight(d, 2 * R, cf, prec)
            ok = lhs.certainly_le(rhs)
            descends = to_ABC(reduce_sphere(img)) == reduce_invariant({m: Scalar(1)})
            rep.records.append(
                {"map": "f", "monomial": list(m), "lhs": str(lhs), "rhs": str(rhs), "descends": descends, "passed": ok is True and descends}
            )
        for m in invariant_monomials(d):
            g = quot_map_g(FreePoly.monomial(m))
            lhs = seminorm(g, abc2, prec)
            # sqrt(C)^d as C^(d/2) stays exact for even d
            rhs = _weight(d, R, Interval(1), prec) * Interval(C).rpow(Fraction(d, 2), prec)
            ok = lhs.certainly_le(rhs)
            descends = g.reduced() == to_ABC(reduce_sphere(FreePoly.monomial(m)))
            rep.records.append(
                {"map": "g", "monomial": list(m), "lhs": str(lhs), "rhs": str(rhs), "descends": descends, "passed": ok is True and descends}
            )
    return rep


# -- dependence on h --------------------------------------------------------------


UNIT_DISC_POINTS = (
    GaussRat(0),
    GaussRat(Fraction(1, 2)),
    GaussRat(0, Fraction(1, 3)),
    GaussRat(Fraction(-3, 5), Fraction(-2, 5)),
    GaussRat(Fraction(1, 4), Fraction(-3, 4)),
    GaussRat(Fraction(-5, 7)),
    GaussRat(Fraction(3, 10), Fraction(2, 5)),
    GaussRat(Fraction(-1, 6), Fraction(5, 8)),
)


def hbar_samples(center, radius, samples: int):
    center = GaussRat.coerce(center)
    radius = Fraction(radius)
    pts = []
    i = 0
    while len(pts) < samples:
        w = UNIT_DISC_POINTS[i % len(UNIT_DISC_POINTS)]
        shrink = Fraction(1, 1 + i // len(UNIT_DISC_POINTS))
        pts.append(center + w * radius * shrink)
        i += 1
    return pts


def disc_avoids_omega(center, radius, lam) -> bool:
    """True when the closed h-disc misses 0 and every lam / j."""
    center = GaussRat.coerce(center)
    radius = Fraction(radius)
    lam = Fraction(lam)
    if center.abs2() <= radius**2:
        return False
    j = 1
    # once lam/j + r < |center| the remaining poles are all outside
    while (lam / j + radius) ** 2 >= center.abs2():
        if (center - lam / j).abs2() <= radius**2:
            return False
        j += 1
    return True


def scalar_at_point(p: InvariantPoly, x: GroupElement) -> Scalar:
    """Value at x as a rational function of h."""
    u, v = x.u, x.v
    vals = (u.abs2() - v.abs2(), u.conjugate() * v, u * v.conjugate())
    total = Scalar(0)
    for m, c in p.terms.items():
        val = GaussRat(1)
        for base, e in zip(vals, m):
            if e:
                val = val * GaussRat.coerce(base) ** e
        total = total + Scalar.coerce(c) * val
    return total


@dataclass
class HolomorphyReport:
    symbolic: Scalar
    records: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r["match"] for r in self.records)


def holomorphy_probe(p, q, x: GroupElement, center, radius, samples: int = 5, lam=DEFAULT_LAMBDA) -> HolomorphyReport:
    if not disc_avoids_omega(center, radius, lam):
        raise HbarAtPole(GaussRat.coerce(center))
    sym = scalar_at_point(star(p, q, StarConfig(lam)), x)
    rep = HolomorphyReport(sym)
    for h in hbar_samples(center, radius, samples):
        num = evaluate(star(p, q, StarConfig(lam, h)), x)
        exact = scalar_eval(sym, h)
        rep.records.append({"h": str(h), "numeric": str(num), "symbolic": str(exact), "match": num == exact})
    return rep


def pole_approach(p, q, x: GroupElement, pole, steps: int = 5, lam=DEFAULT_LAMBDA):
    """|(p * q)(x)| at h = pole + 10^-k, k = 1..steps (exact values)."""
    pole = GaussRat.coerce(pole)
    out = []
    for k in range(1, steps + 1):
        h = pole + GaussRat(Fraction(1, 10**k))
        out.append((h, evaluate(star(p, q, StarConfig(lam, h)), x)))
    return out


def evaluation_bound_check(p, k: GroupElement) -> bool:
    """|p(k)| <= (1 ||.||_1)_0 (p).

    Decided by interval enclosures when they separate; ties (e.g. a single
    monomial with |m(k)| = 1) fall back to the exact termwise certificate
    |m(k)|^2 <= 1, which gives the bound by the triangle inequality.
    """
    sp = SeminormParams(0, 1, "UV" if isinstance(p, FreePoly) else "ABC")
    val = evaluate(p, k)
    verdict, *_ = certify_le(lambda pr: abs_gauss(val, pr), lambda pr: seminorm(p, sp, pr), max_prec=256)
    if verdict is not None:
        return verdict
    cls = type(p)
    return all(evaluate(cls.monomial(*m) if cls is InvariantPoly else cls.monomial(m), k).abs2() <= 1 for m in p.terms)


__all__ = [
    "SeminormParams",
    "seminorm",
    "lift_star",
    "DiscConstants",
    "disc_constants",
    "continuity_report",
    "quot_map_f",
    "quot_map_g",
    "quot_equivalence_report",
    "holomorphy_probe",
    "product_poles",
]
