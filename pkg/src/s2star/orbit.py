"""Polynomial function algebras on SU(2) and on the orbit S^2.

``FreePoly`` is the free commutative algebra on U, Ubar, V, Vbar (exponent
quadruples ``(alpha, beta, gamma, delta)``).  ``SpherePoly`` is its normal
form modulo U Ubar + V Vbar = 1, and ``InvariantPoly`` the invariant
subalgebra presented by A, B, C with A^2 + 4BC = 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, gcd, isqrt

from .errors import NoPreimageWithinBound, NotInvariant
from .linalg import inverse
from .scalars import I, GaussRat, Scalar, scalar_eval
from .uea import DEFAULT_LAMBDA, GroupElement

GENERATORS = ("U", "Ubar", "V", "Vbar")
_GEN_INDEX = {n: i for i, n in enumerate(GENERATORS)}


@dataclass(frozen=True)
class OrbitParams:
    lam: Fraction = DEFAULT_LAMBDA

    def __post_init__(self):
        if Fraction(self.lam) <= 0:
            raise ValueError("lambda must be positive")


def _add_into(out, key, val):
    if key in out:
        s = out[key] + val
        if s:
            out[key] = s
        else:
            del out[key]
    elif val:
        out[key] = val


class FreePoly:
    """Commutative polynomial in U, Ubar, V, Vbar."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    def _new(self, terms):
        return FreePoly(terms)

    @classmethod
    def generator(cls, name: str, coeff=None) -> "FreePoly":
        e = [0, 0, 0, 0]
        e[_GEN_INDEX[name]] = 1
        return cls({tuple(e): Scalar(1) if coeff is None else coeff})

    @classmethod
    def generators(cls):
        return {n: cls.generator(n) for n in GENERATORS}

    @classmethod
    def constant(cls, c) -> "FreePoly":
        if not isinstance(c, Scalar):
            c = Scalar.coerce(c)
        return cls({(0, 0, 0, 0): c})

    @classmethod
    def monomial(cls, exps, coeff=None):
        return cls({tuple(exps): Scalar(1) if coeff is None else coeff})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, FreePoly):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction, GaussRat, Scalar)):
            return self.terms == FreePoly.constant(other).terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __neg__(self):
        return self._new({k: -v for k, v in self.terms.items()})

    def _coerce(self, other):
        if isinstance(other, FreePoly):
            return other
        return FreePoly({(0, 0, 0, 0): other})

    def __add__(self, other):
        if not isinstance(other, FreePoly):
            if not other:
                return self
            other = self._coerce(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            _add_into(out, k, v)
        return self._new(out)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        if not isinstance(other, FreePoly):
            if isinstance(other, (int, Fraction, GaussRat, Scalar)):
                if not other:
                    return self._new({})
                return self._new({k: v * other for k, v in self.terms.items()})
            return NotImplemented
        out = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                _add_into(out, (k1[0] + k2[0], k1[1] + k2[1], k1[2] + k2[2], k1[3] + k2[3]), v1 * v2)
        return self._new(out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, GaussRat, Scalar)):
            if not other:
                return self._new({})
            return self._new({k: other * v for k, v in self.terms.items()})
        return NotImplemented

    def __truediv__(self, other):
        inv = 1 / Scalar.coerce(other)
        return self * inv

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        out = self._new({(0, 0, 0, 0): Scalar(1)})
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def map_coeffs(self, f):
        return self._new({k: f(v) for k, v in self.terms.items()})

    def degree(self) -> int:
        return max((sum(k) for k in self.terms), default=0)

    def max_up(self) -> int:
        """Largest k_up = alpha + gamma over monomials."""
        return max((k[0] + k[2] for k in self.terms), default=0)

    def max_down(self) -> int:
        return max((k[1] + k[3] for k in self.terms), default=0)

    def __repr__(self):
        return f"{type(self).__name__}({self})"

    def __str__(self):
        return _poly_text(self.terms, GENERATORS)


class SpherePoly(FreePoly):
    """FreePoly in normal form: no monomial contains both U and Ubar."""

    __slots__ = ()

    def _new(self, terms):
        return reduce_sphere(FreePoly(terms))


def _poly_text(terms, names):
    if not terms:
        return "0"
    parts = []
    for k, v in sorted(terms.items()):
        fac = []
        for n, e in zip(names, k):
            if e == 1:
                fac.append(n)
            elif e > 1:
                fac.append(f"{n}^{e}")
        coeff = str(v) if isinstance(v, Scalar) else str(Scalar.coerce(v))
        parts.append("*".join([coeff] + fac))
    return " + ".join(parts)


def k_up(m) -> int:
    return m[0] + m[2]


def k_down(m) -> int:
    return m[1] + m[3]


def is_right_invariant(p: FreePoly) -> bool:
    return all(k_up(m) == k_down(m) for m in p.terms)


@lru_cache(maxsize=None)
def _reduce_mono(m):
    a, b, c, d = m
    r = min(a, b)
    if r == 0:
        return ((m, 1),)
    # (U Ubar)^r = (1 - V Vbar)^r
    return tuple(((a - r, b - r, c + j, d + j), (-1) ** j * comb(r, j)) for j in range(r + 1))


def reduce_sphere(p: FreePoly) -> SpherePoly:
    out = {}
    for m, v in p.terms.items():
        if m[0] and m[1]:
            for mm, n in _reduce_mono(m):
                _add_into(out, mm, v * n)
        else:
            _add_into(out, m, v)
    sp = object.__new__(SpherePoly)
    sp.terms = out
    return sp


def is_sphere_normal(p: FreePoly) -> bool:
    return all(not (m[0] and m[1]) for m in p.terms)


# -- left-invariant derivations ----------------------------------------------

# generator index -> (coefficient, image generator index) or None
_LEFTINV = {
    "X": {1: (1, 2), 3: (-1, 0)},  # X Ubar = V, X Vbar = -U
    "Y": {0: (-1, 3), 2: (1, 1)},  # Y U = -Vbar, Y V = Ubar
}


def leftinv(Z: str, p: FreePoly) -> FreePoly:
    table = _LEFTINV[Z]
    out = {}
    for m, v in p.terms.items():
        for gi, (sign, img) in table.items():
            e = m[gi]
            if not e:
                continue
            mm = list(m)
            mm[gi] -= 1
            mm[img] += 1
            _add_into(out, tuple(mm), v * (sign * e))
    res = FreePoly(out)
    return reduce_sphere(res) if isinstance(p, SpherePoly) else res


def leftinv_power(Z: str, p: FreePoly, n: int) -> FreePoly:
    for _ in range(n):
        if not p:
            break
        p = leftinv(Z, p)
    return p


# -- the invariant subalgebra ------------------------------------------------


class InvariantPoly:
    """Polynomial in A, B, C in normal form (A-exponent at most 1)."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        out = {}
        for k, v in (terms or {}).items():
            if k[0] > 1:
                for kk, n in _reduce_abc_mono(k):
                    _add_into(out, kk, v * n)
            else:
                _add_into(out, k, v)
        self.terms = out

    @classmethod
    def _raw(cls, terms):
        obj = object.__new__(cls)
        obj.terms = terms
        return obj

    @classmethod
    def generator(cls, name: str, coeff=None):
        e = {"A": (1, 0, 0), "B": (0, 1, 0), "C": (0, 0, 1)}[name]
        return cls._raw({e: Scalar(1) if coeff is None else coeff})

    @classmethod
    def generators(cls):
        return {n: cls.generator(n) for n in "ABC"}

    @classmethod
    def constant(cls, c):
        if not isinstance(c, Scalar):
            c = Scalar.coerce(c)
        return cls._raw({(0, 0, 0): c} if c else {})

    @classmethod
    def monomial(cls, eA, eB, eC, coeff=None):
        return cls({(eA, eB, eC): Scalar(1) if coeff is None else coeff})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, InvariantPoly):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction, GaussRat, Scalar)):
            return self.terms == InvariantPoly.constant(other).terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __neg__(self):
        return InvariantPoly._raw({k: -v for k, v in self.terms.items()})

    def _coerce(self, other):
        if isinstance(other, InvariantPoly):
            return other
        return InvariantPoly({(0, 0, 0): other})

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            _add_into(out, k, v)
        return InvariantPoly._raw(out)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        if not isinstance(other, InvariantPoly):
            if isinstance(other, (int, Fraction, GaussRat, Scalar)):
                if not other:
                    return InvariantPoly._raw({})
                return InvariantPoly._raw({k: v * other for k, v in self.terms.items()})
            return NotImplemented
        out = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                v = v1 * v2
                for kk, n in _reduce_abc_mono((k1[0] + k2[0], k1[1] + k2[1], k1[2] + k2[2])):
                    _add_into(out, kk, v * n if n != 1 else v)
        return InvariantPoly._raw(out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, GaussRat, Scalar)):
            return self * other
        return NotImplemented

    def __truediv__(self, other):
        return self * (1 / Scalar.coerce(other))

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        out = InvariantPoly.constant(1)
        for _ in range(n):
            out = out * self
        return out

    def map_coeffs(self, f):
        return InvariantPoly({k: f(v) for k, v in self.terms.items()})

    def coeff(self, eA, eB, eC):
        return self.terms.get((eA, eB, eC), Scalar(0))

    def degree(self) -> int:
        return max((sum(k) for k in self.terms), default=0)

    def conjugate(self) -> "InvariantPoly":
        """Complex conjugation: A -> A, B <-> C, coefficients conjugated."""
        return InvariantPoly._raw({(a, c, b): Scalar.coerce(v).conjugate() for (a, b, c), v in self.terms.items()})

    def eval_hbar(self, h) -> "InvariantPoly":
        """Substitute a numeric value for h in every coefficient."""
        return InvariantPoly({k: Scalar(scalar_eval(v, h)) for k, v in self.terms.items()})

    def __repr__(self):
        return f"InvariantPoly({self})"

    def __str__(self):
        return _poly_text(self.terms, ("A", "B", "C"))


@lru_cache(maxsize=None)
def _reduce_abc_mono(k):
    a, b, c = k
    if a <= 1:
        return ((k, 1),)
    # A^2 = 1 - 4BC
    q, r = divmod(a, 2)
    return tuple(((r, b + j, c + j), comb(q, j) * (-4) ** j) for j in range(q + 1))


def reduce_invariant(p) -> InvariantPoly:
    """Normal form of a polynomial in A, B, C given as a dict or InvariantPoly."""
    if isinstance(p, InvariantPoly):
        return InvariantPoly(dict(p.terms))
    return InvariantPoly(dict(p))


# -- embedding and its inverse ---------------------------------------------


def embed_generators():
    """A, B, C as (unreduced) FreePoly expressions."""
    U, Ub, V, Vb = (FreePoly.generator(n) for n in GENERATORS)
    return {"A": U * Ub - V * Vb, "B": Ub * V, "C": U * Vb}


@lru_cache(maxsize=None)
def _embed_mono(k):
    """Sphere normal form of A^a B^b C^c with integer coefficients."""
    a, b, c = k
    # A = 1 - 2 V Vbar in normal form
    terms = {}
    for j in range(a + 1):
        n = comb(a, j) * (-2) ** j
        # (V Vbar)^j B^b C^c = Ubar^b V^b U^c Vbar^c V^j Vbar^j
        m = (c, b, b + j, c + j)
        for mm, nn in _reduce_mono(m):
            _add_into(terms, mm, n * nn)
    return tuple(sorted(terms.items()))


def embed(p: InvariantPoly) -> SpherePoly:
    out = {}
    for k, v in p.terms.items():
        for m, n in _embed_mono(k):
            _add_into(out, m, v * n)
    sp = object.__new__(SpherePoly)
    sp.terms = out
    return sp


def _charge(m) -> int:
    """U(1) weight preserved by both relations: B has +1, C has -1."""
    return (m[1] + m[2] - m[0] - m[3]) // 2


@lru_cache(maxsize=None)
def _abc_block(t: int, q: int):
    """Rows (sphere monomials) and inverse matrix for ABC degree <= t, charge q."""
    cols = []
    for eA in (0, 1):
        for eB in range(t + 1):
            eC = eB - q
            if eC < 0 or eA + eB + eC > t:
                continue
            cols.append((eA, eB, eC))
    rows = []
    for m in range(t + 1):
        for beta in range(m + 1):
            # alpha = 0: gamma = m, beta + delta = m
            mono = (0, beta, m, m - beta)
            if _charge(mono) == q:
                rows.append(mono)
        for alpha in range(1, m + 1):
            mono = (alpha, 0, m - alpha, m)
            if _charge(mono) == q:
                rows.append(mono)
    assert len(rows) == len(cols), (t, q, len(rows), len(cols))
    index = {r: i for i, r in enumerate(rows)}
    mat = [[Fraction(0)] * len(cols) for _ in rows]
    for j, col in enumerate(cols):
        for m, n in _embed_mono(col):
            mat[index[m]][j] = Fraction(n)
    inv = inverse(mat) if mat else []
    return index, cols, inv


def to_ABC(p: FreePoly, degree_bound: int | None = None) -> InvariantPoly:
    """Invariant polynomial whose embedding is the sphere normal form of ``p``."""
    sp = p if isinstance(p, SpherePoly) else reduce_sphere(p)
    if not is_right_invariant(sp):
        raise NotInvariant(f"{sp} is not right invariant")
    need = max((k_up(m) for m in sp.terms), default=0)
    t = need if degree_bound is None else degree_bound
    if need > t:
        raise NoPreimageWithinBound(f"needs ABC degree {need} > bound {t}")
    by_charge = {}
    for m, v in sp.terms.items():
        by_charge.setdefault(_charge(m), []).append((m, v))
    out = {}
    for q, items in by_charge.items():
        index, cols, inv = _abc_block(t, q)
        for m, v in items:
            j = index[m]
            for i, col in enumerate(cols):
                x = inv[i][j]
                if x:
                    _add_into(out, col, v * x)
    return InvariantPoly._raw(out)


def to_ABC_exact(p: FreePoly, degree_bound: int | None = None) -> InvariantPoly:
    """``to_ABC`` followed by a round-trip check through the embedding."""
    res = to_ABC(p, degree_bound)
    if embed(res).terms != reduce_sphere(p).terms:
        raise NoPreimageWithinBound("linear solve did not reproduce the input")
    return res


# -- group action and evaluation ----------------------------------------------


def _generator_images(k: GroupElement):
    u, v = k.u, k.v
    ub, vb = u.conjugate(), v.conjugate()
    U, Ub, V, Vb = (FreePoly.generator(n) for n in GENERATORS)
    S = Scalar
    return (
        U * S(ub) + V * S(vb),
        Ub * S(u) + Vb * S(v),
        U * S(-v) + V * S(u),
        Ub * S(-vb) + Vb * S(ub),
    )


def group_action(k: GroupElement, p):
    """Left translation by k on polynomials (FreePoly or InvariantPoly)."""
    if isinstance(p, InvariantPoly):
        return to_ABC(group_action(k, embed(p)))
    imgs = _generator_images(k)
    pows = [[FreePoly.constant(1)] for _ in range(4)]

    def power(i, e):
        while len(pows[i]) <= e:
            pows[i].append(pows[i][-1] * imgs[i])
        return pows[i][e]

    out = FreePoly()
    for m, v in p.terms.items():
        term = FreePoly.constant(1)
        for i, e in enumerate(m):
            if e:
                term = term * power(i, e)
        out = out + term * v
    return reduce_sphere(out) if isinstance(p, SpherePoly) else out


def _coeff_value(c, h):
    c = Scalar.coerce(c)
    if c.is_constant():
        return c.constant_value()
    if h is None:
        raise ValueError("coefficient depends on h; supply a numeric h")
    return scalar_eval(c, h)


def evaluate(p, k: GroupElement, h=None) -> GaussRat:
    if isinstance(p, InvariantPoly):
        u, v = k.u, k.v
        vals = (u.abs2() - v.abs2(), u.conjugate() * v, u * v.conjugate())
    else:
        u, v = k.u, k.v
        vals = (u, u.conjugate(), v, v.conjugate())
    vals = tuple(GaussRat.coerce(x) for x in vals)
    total = GaussRat(0)
    for m, c in p.terms.items():
        t = _coeff_value(c, h)
        for x, e in zip(vals, m):
            if e:
                t = t * x**e
        total = total + t
    return total


def linear_functions(lam=DEFAULT_LAMBDA):
    """Images of f_H, f_X, f_Y: i*lambda times A, B, C."""
    c = Scalar(I * GaussRat(Fraction(lam)))
    g = InvariantPoly.generators()
    return g["A"] * c, g["B"] * c, g["C"] * c


def sample_points(count: int):
    """Deterministic rational points of SU(2): integer quadruples of norm N^2."""
    out = []
    N = 1
    while len(out) < count:
        r = N
        for a in range(-r, r + 1):
            for b in range(-r, r + 1):
                rest = N * N - a * a - b * b
                if rest < 0:
                    continue
                for c in range(-isqrt(rest), isqrt(rest) + 1):
                    d2 = rest - c * c
                    d = isqrt(d2)
                    if d * d != d2:
                        continue
                    for dd in sorted({d, -d}):
                        if gcd(gcd(a, b), gcd(gcd(c, dd), N)) != 1:
                            continue
                        out.append(
                            GroupElement(GaussRat(Fraction(a, N), Fraction(b, N)), GaussRat(Fraction(c, N), Fraction(dd, N)))
                        )
                        if len(out) >= count:
                            return out
        N += 1
    return out


def spread_points(count: int):
    """Sample points with u and v both nonzero, spread over the enumeration."""
    pts = [k for k in sample_points(count * 8 + 40) if k.u and k.v]
    step = max(1, len(pts) // count)
    return pts[::step][:count]
