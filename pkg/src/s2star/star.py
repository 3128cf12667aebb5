"""The twisted product on Pol(S^2) and its expansion in h.

p * q = sum_n c_n (Y~^n p)(X~^n q), computed on embedded representatives
and converted back to A, B, C.  The sum is finite because Y~ lowers k_up
and X~ lowers k_down.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .errors import EvalAtPole, HbarAtPole
from .orbit import (
    FreePoly,
    InvariantPoly,
    _add_into,
    _embed_mono,
    leftinv_power,
    reduce_sphere,
    to_ABC,
)
from .scalars import I, GaussRat, Poles, Scalar, scalar_eval, scalar_poles
from .uea import DEFAULT_LAMBDA, twist


@dataclass(frozen=True)
class StarConfig:
    lam: Fraction = DEFAULT_LAMBDA
    hbar: GaussRat | None = None  # None means symbolic

    @property
    def symbolic(self) -> bool:
        return self.hbar is None

    def numeric(self, h) -> "StarConfig":
        return StarConfig(self.lam, GaussRat.coerce(h))

    def conjugate(self) -> "StarConfig":
        return self if self.hbar is None else StarConfig(self.lam, self.hbar.conjugate())


SYMBOLIC = StarConfig()


@dataclass
class FormalProduct:
    orders: list = field(default_factory=list)

    def __getitem__(self, r):
        return self.orders[r]

    def __len__(self):
        return len(self.orders)


def _embedded_mono(k) -> FreePoly:
    return FreePoly({m: Fraction(n) for m, n in _embed_mono(k)})


@lru_cache(maxsize=None)
def _pair_terms(m1, m2):
    """Per-order contributions for a pair of ABC monomials.

    Returns a tuple indexed by n of tuples ((eA, eB, eC), Fraction): the ABC
    normal form of reduce(Y~^n e(m1) * X~^n e(m2)).
    """
    p = _embedded_mono(m1)
    q = _embedded_mono(m2)
    top = min(p.max_up(), q.max_down())
    out = []
    pn, qn = p, q
    for n in range(top + 1):
        if n:
            pn = leftinv_power("Y", pn, 1)
            qn = leftinv_power("X", qn, 1)
        prod = reduce_sphere(pn * qn)
        out.append(tuple(sorted(to_ABC(prod).terms.items())))
    while out and not out[-1]:
        out.pop()
    return tuple(out)


def twist_coeffs(N: int, cfg: StarConfig):
    """c_0..c_N as Scalars; numeric mode substitutes h after a pole check."""
    tw = twist(N, Fraction(cfg.lam))
    cs = [tw[n] for n in range(N + 1)]
    if cfg.symbolic:
        return cs
    h = cfg.hbar
    if not h:
        raise HbarAtPole(h)
    out = []
    for c in cs:
        try:
            out.append(Scalar(scalar_eval(c, h)))
        except EvalAtPole:
            raise HbarAtPole(h) from None
    return out


@lru_cache(maxsize=4096)
def _pair_symbolic(m1, m2, lam):
    terms = _pair_terms(m1, m2)
    if not terms:
        return ()
    cs = twist_coeffs(len(terms) - 1, StarConfig(lam))
    acc = {}
    for n, part in enumerate(terms):
        for key, x in part:
            _add_into(acc, key, cs[n] * x)
    return tuple(sorted(acc.items()))


def _coeff_at(c, h):
    c = Scalar.coerce(c)
    if c.is_constant():
        return c
    try:
        return Scalar(scalar_eval(c, h))
    except EvalAtPole:
        raise HbarAtPole(h) from None


def star(p: InvariantPoly, q: InvariantPoly, cfg: StarConfig = SYMBOLIC) -> InvariantPoly:
    out = {}
    if cfg.symbolic:
        for m1, a in p.terms.items():
            for m2, b in q.terms.items():
                ab = a * b
                for key, x in _pair_symbolic(m1, m2, Fraction(cfg.lam)):
                    _add_into(out, key, ab * x)
        return InvariantPoly._raw(out)
    pairs = [(m1, m2) for m1 in p.terms for m2 in q.terms]
    N = max((len(_pair_terms(m1, m2)) - 1 for m1, m2 in pairs), default=0)
    cs = twist_coeffs(max(N, 0), cfg)
    h = cfg.hbar
    for m1, a in p.terms.items():
        a = _coeff_at(a, h)
        for m2, b in q.terms.items():
            ab = a * _coeff_at(b, h)
            for n, part in enumerate(_pair_terms(m1, m2)):
                w = ab * cs[n]
                for key, x in part:
                    _add_into(out, key, w * x)
    return InvariantPoly._raw(out)


def commutator(p, q, cfg: StarConfig = SYMBOLIC) -> InvariantPoly:
    return star(p, q, cfg) - star(q, p, cfg)


def formal_expand(p, q, order: int, cfg: StarConfig = SYMBOLIC) -> FormalProduct:
    prod = star(p, q, StarConfig(cfg.lam))
    orders = [dict() for _ in range(order + 1)]
    for key, c in prod.terms.items():
        assert c.is_regular_at_zero(), f"coefficient {c} is singular at h = 0"
        series = c.taylor(order)
        for r in range(order + 1):
            if series[r]:
                orders[r][key] = Scalar(series[r])
    return FormalProduct([InvariantPoly._raw(o) for o in orders])


def poisson(p, q, cfg: StarConfig = SYMBOLIC) -> InvariantPoly:
    c1 = formal_expand(p, q, 1, cfg)[1] - formal_expand(q, p, 1, cfg)[1]
    return c1 * Scalar(-I)


def product_poles(p, q, cfg: StarConfig = SYMBOLIC) -> Poles:
    roots = set()
    factors = []
    for c in star(p, q, StarConfig(cfg.lam)).terms.values():
        ps = scalar_poles(c)
        roots |= ps.roots
        for f in ps.factors:
            if f not in factors:
                factors.append(f)
    return Poles(frozenset(roots), tuple(factors))


def hermitian_check(p, q, h, cfg: StarConfig = SYMBOLIC) -> bool:
    h = GaussRat.coerce(h)
    lhs = star(p, q, cfg.numeric(h)).conjugate()
    rhs = star(q.conjugate(), p.conjugate(), cfg.numeric(h.conjugate()))
    return lhs == rhs


def twist_apply(p: FreePoly, q: FreePoly, cfg: StarConfig = SYMBOLIC) -> FreePoly:
    """The twist applied to free polynomials, without any quotient."""
    top = min(p.max_up(), q.max_down())
    cs = twist_coeffs(top, cfg)
    if not cfg.symbolic:
        p = p.map_coeffs(lambda c: _coeff_at(c, cfg.hbar))
        q = q.map_coeffs(lambda c: _coeff_at(c, cfg.hbar))
    out = FreePoly()
    pn, qn = p, q
    for n in range(top + 1):
        if n:
            pn = leftinv_power("Y", pn, 1)
            qn = leftinv_power("X", qn, 1)
            if not pn or not qn:
                break
        out = out + (pn * qn) * cs[n]
    return out


def star_via_free(p: InvariantPoly, q: InvariantPoly, cfg: StarConfig = SYMBOLIC) -> InvariantPoly:
    """Reference path: embed, apply the twist on free polynomials, reduce."""
    from .orbit import embed

    return to_ABC(reduce_sphere(twist_apply(embed(p), embed(q), cfg)))
