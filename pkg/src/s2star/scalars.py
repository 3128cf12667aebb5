"""Exact arithmetic in Q(i) and in the rational function field Q(i)(h).

``GaussRat`` is a Gaussian rational stored as ``(a + b*i) / d`` with
integers ``a, b`` and ``d > 0`` in lowest terms.  ``Scalar`` is a reduced
quotient of two dense polynomials in the deformation parameter ``h`` with
``GaussRat`` coefficients and a monic denominator.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import DivisionByZero, EvalAtPole, NotRegularAtZero

__all__ = [
    "GaussRat",
    "Scalar",
    "TaylorSeries",
    "Poles",
    "I",
    "scalar_arith",
    "scalar_eval",
    "scalar_taylor",
    "scalar_poles",
    "parse_scalar",
]


class GaussRat:
    """A Gaussian rational number ``(a + b i) / d``."""

    __slots__ = ("a", "b", "d")

    def __init__(self, re=0, im=0):
        re = _as_fraction(re)
        im = _as_fraction(im)
        d = re.denominator * im.denominator // gcd(re.denominator, im.denominator)
        a = re.numerator * (d // re.denominator)
        b = im.numerator * (d // im.denominator)
        g = gcd(a, b, d)
        self.a, self.b, self.d = a // g, b // g, d // g

    @classmethod
    def _make(cls, a, b, d):
        if d < 0:
            a, b, d = -a, -b, -d
        g = gcd(a, b, d)
        if g != 1:
            a, b, d = a // g, b // g, d // g
        obj = object.__new__(cls)
        obj.a, obj.b, obj.d = a, b, d
        return obj

    @classmethod
    def coerce(cls, x) -> "GaussRat":
        if isinstance(x, GaussRat):
            return x
        if isinstance(x, int):
            return cls._make(x, 0, 1)
        if isinstance(x, Fraction):
            return cls._make(x.numerator, 0, x.denominator)
        if isinstance(x, complex):
            return cls(Fraction(x.real), Fraction(x.imag))
        raise TypeError(f"cannot interpret {x!r} as a Gaussian rational")

    @property
    def re(self) -> Fraction:
        return Fraction(self.a, self.d)

    @property
    def im(self) -> Fraction:
        return Fraction(self.b, self.d)

    def is_real(self) -> bool:
        return self.b == 0

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def __eq__(self, other):
        if isinstance(other, GaussRat):
            return self.a == other.a and self.b == other.b and self.d == other.d
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and Fraction(self.a, self.d) == other
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(Fraction(self.a, self.d))
        return hash((self.a, self.b, self.d))

    def __neg__(self):
        return GaussRat._make(-self.a, -self.b, self.d)

    def __add__(self, other):
        if not isinstance(other, GaussRat):
            try:
                other = GaussRat.coerce(other)
            except TypeError:
                return NotImplemented
        if self.d == other.d:
            return GaussRat._make(self.a + other.a, self.b + other.b, self.d)
        return GaussRat._make(
            self.a * other.d + other.a * self.d,
            self.b * other.d + other.b * self.d,
            self.d * other.d,
        )

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, GaussRat):
            try:
                other = GaussRat.coerce(other)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, GaussRat):
            if isinstance(other, int):
                return GaussRat._make(self.a * other, self.b * other, self.d)
            try:
                other = GaussRat.coerce(other)
            except TypeError:
                return NotImplemented
        if self.b == 0 and other.b == 0:
            return GaussRat._make(self.a * other.a, 0, self.d * other.d)
        return GaussRat._make(
            self.a * other.a - self.b * other.b,
            self.a * other.b + self.b * other.a,
            self.d * other.d,
        )

    __rmul__ = __mul__

    def inverse(self) -> "GaussRat":
        n = self.a * self.a + self.b * self.b
        if n == 0:
            raise DivisionByZero("division by the zero Gaussian rational")
        return GaussRat._make(self.d * self.a, -self.d * self.b, n)

    def __truediv__(self, other):
        if not isinstance(other, GaussRat):
            try:
                other = GaussRat.coerce(other)
            except TypeError:
                return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return GaussRat.coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = _GR_ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> "GaussRat":
        return GaussRat._make(self.a, -self.b, self.d)

    def abs2(self) -> Fraction:
        """Squared modulus, exact."""
        return Fraction(self.a * self.a + self.b * self.b, self.d * self.d)

    def __complex__(self):
        return complex(self.a / self.d, self.b / self.d)

    def __repr__(self):
        return f"GaussRat({self})"

    def __str__(self):
        re, im = self.re, self.im
        if im == 0:
            return _frac_str(re)
        ims = _imag_str(im)
        if re == 0:
            return ims
        if im < 0:
            return f"{_frac_str(re)}-{_imag_str(-im)}"
        return f"{_frac_str(re)}+{ims}"

    def literal(self) -> str:
        """Form usable as a coefficient inside a product term."""
        if self.b == 0:
            return _frac_str(self.re)
        return f"({self})"


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, GaussRat):
        if x.b:
            raise TypeError("expected a real value")
        return x.re
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as a rational number")


def _frac_str(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def _imag_str(q: Fraction) -> str:
    return f"{_frac_str(q)}*i"


_GR_ZERO = GaussRat._make(0, 0, 1)
_GR_ONE = GaussRat._make(1, 0, 1)
I = GaussRat._make(0, 1, 1)


# ---------------------------------------------------------------------------
# dense univariate polynomials over Q(i); tuples, low degree first, no
# trailing zeros, zero polynomial is ()


def _trim(p):
    n = len(p)
    while n and not p[n - 1]:
        n -= 1
    return tuple(p[:n])


def _padd(p, q):
    if len(p) < len(q):
        p, q = q, p
    out = list(p)
    for i, c in enumerate(q):
        out[i] = out[i] + c
    return _trim(out)


def _pneg(p):
    return tuple(-c for c in p)


def _psub(p, q):
    return _padd(p, _pneg(q))


def _pscale(p, c):
    if not c:
        return ()
    return tuple(x * c for x in p)


def _pmul(p, q):
    if not p or not q:
        return ()
    if len(p) == 1:
        return _pscale(q, p[0])
    if len(q) == 1:
        return _pscale(p, q[0])
    out = [_GR_ZERO] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if not a:
            continue
        for j, b in enumerate(q):
            out[i + j] = out[i + j] + a * b
    return _trim(out)


def _pdivmod(p, q):
    if not q:
        raise DivisionByZero("polynomial division by zero")
    if len(p) < len(q):
        return (), p
    inv_lc = q[-1].inverse()
    rem = list(p)
    quo = [_GR_ZERO] * (len(p) - len(q) + 1)
    dq = len(q) - 1
    for k in range(len(p) - len(q), -1, -1):
        c = rem[k + dq] * inv_lc
        quo[k] = c
        if c:
            for j, b in enumerate(q):
                rem[k + j] = rem[k + j] - c * b
    return _trim(quo), _trim(rem[:dq])


def _pmonic(p):
    if not p or p[-1] == _GR_ONE:
        return p
    inv = p[-1].inverse()
    return tuple(c * inv for c in p)


def _pgcd(p, q):
    while q:
        p, q = q, _pmonic(_pdivmod(p, q)[1])
    return _pmonic(p)


def _pquo(p, q):
    quo, rem = _pdivmod(p, q)
    assert not rem, "inexact polynomial division"
    return quo


def _peval(p, x):
    acc = _GR_ZERO
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _pderiv(p):
    return _trim(tuple(c * k for k, c in enumerate(p) if k))


def _pconj(p):
    return tuple(c.conjugate() for c in p)


_P_ONE = (_GR_ONE,)
_P_H = (_GR_ZERO, _GR_ONE)


def _poly_str(p) -> str:
    if not p:
        return "0"
    out = []
    for k in range(len(p) - 1, -1, -1):
        c = p[k]
        if not c:
            continue
        neg = c.b == 0 and c.a < 0
        mag = -c if (neg and out) else c
        lit = mag.literal()
        if k == 0:
            term = lit
        elif k == 1:
            term = f"{lit}*h"
        else:
            term = f"{lit}*h^{k}"
        if not out:
            out.append(term)
        else:
            out.append((" - " if neg else " + ") + term)
    return "".join(out)


# ---------------------------------------------------------------------------


class Scalar:
    """Element of Q(i)(h) as a reduced fraction with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, value=0):
        if isinstance(value, Scalar):
            self.num, self.den = value.num, value.den
            return
        c = GaussRat.coerce(value)
        self.num = (c,) if c else ()
        self.den = _P_ONE

    @classmethod
    def _raw(cls, num, den):
        obj = object.__new__(cls)
        obj.num = num
        obj.den = den
        return obj

    @classmethod
    def from_polys(cls, num, den=_P_ONE) -> "Scalar":
        """Build from coefficient sequences (low degree first), normalizing."""
        num = _trim(tuple(GaussRat.coerce(c) for c in num))
        den = _trim(tuple(GaussRat.coerce(c) for c in den))
        return _normalize(num, den)

    @classmethod
    def hbar(cls) -> "Scalar":
        return cls._raw(_P_H, _P_ONE)

    @classmethod
    def coerce(cls, x) -> "Scalar":
        if isinstance(x, Scalar):
            return x
        c = GaussRat.coerce(x)
        return cls._raw((c,) if c else (), _P_ONE)

    # -- predicates ---------------------------------------------------------
    def __bool__(self):
        return bool(self.num)

    def is_zero(self) -> bool:
        return not self.num

    def is_polynomial(self) -> bool:
        return len(self.den) == 1

    def is_constant(self) -> bool:
        return len(self.den) == 1 and len(self.num) <= 1

    def constant_value(self) -> GaussRat:
        if not self.is_constant():
            raise ValueError(f"{self} depends on h")
        return self.num[0] if self.num else _GR_ZERO

    def is_real(self) -> bool:
        return all(c.b == 0 for c in self.num) and all(c.b == 0 for c in self.den)

    def is_regular_at_zero(self) -> bool:
        return bool(self.den[0])

    @property
    def num_degree(self) -> int:
        return len(self.num) - 1

    @property
    def den_degree(self) -> int:
        return len(self.den) - 1

    # -- arithmetic ---------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = Scalar.coerce(other)
            except TypeError:
                return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self.is_constant():
            return hash(self.constant_value())
        return hash((self.num, self.den))

    def __neg__(self):
        return Scalar._raw(_pneg(self.num), self.den)

    def __add__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = Scalar.coerce(other)
            except TypeError:
                return NotImplemented
        if not other.num:
            return self
        if not self.num:
            return other
        b, d = self.den, other.den
        if len(b) == 1 and len(d) == 1:
            return Scalar._raw(_padd(self.num, other.num), _P_ONE)
        if b == d:
            num = _padd(self.num, other.num)
            if not num:
                return ZERO
            g = _pgcd(num, b)
            if len(g) > 1:
                return _finish(_pquo(num, g), _pquo(b, g))
            return Scalar._raw(num, b)
        g = _pgcd(b, d) if (len(b) > 1 and len(d) > 1) else _P_ONE
        if len(g) == 1:
            num = _padd(_pmul(self.num, d), _pmul(other.num, b))
            if not num:
                return ZERO
            return Scalar._raw(num, _pmul(b, d))
        b_g, d_g = _pquo(b, g), _pquo(d, g)
        num = _padd(_pmul(self.num, d_g), _pmul(other.num, b_g))
        if not num:
            return ZERO
        den = _pmul(b, d_g)
        g2 = _pgcd(num, g)
        if len(g2) > 1:
            num, den = _pquo(num, g2), _pquo(den, g2)
        return _finish(num, den)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = Scalar.coerce(other)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Scalar):
            if isinstance(other, (int, Fraction, GaussRat)):
                c = GaussRat.coerce(other)
                if not c:
                    return ZERO
                return Scalar._raw(_pscale(self.num, c), self.den)
            return NotImplemented
        if not self.num or not other.num:
            return ZERO
        a, b, c, d = self.num, self.den, other.num, other.den
        if len(b) == 1 and len(d) == 1:
            return Scalar._raw(_pmul(a, c), _P_ONE)
        if len(d) > 1 and len(a) > 1:
            g1 = _pgcd(a, d)
            if len(g1) > 1:
                a, d = _pquo(a, g1), _pquo(d, g1)
        if len(b) > 1 and len(c) > 1:
            g2 = _pgcd(c, b)
            if len(g2) > 1:
                c, b = _pquo(c, g2), _pquo(b, g2)
        return _finish(_pmul(a, c), _pmul(b, d))

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if not self.num:
            raise DivisionByZero("division by the zero Scalar")
        return _finish(self.den, self.num)

    def __truediv__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = Scalar.coerce(other)
            except TypeError:
                return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return Scalar.coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> "Scalar":
        """Coefficient-wise conjugate: conj(f(h)) == f.conjugate()(conj h)."""
        return Scalar._raw(_pconj(self.num), _pconj(self.den))

    # -- analysis -----------------------------------------------------------
    def eval(self, h) -> GaussRat:
        return scalar_eval(self, h)

    def taylor(self, order: int) -> "TaylorSeries":
        return scalar_taylor(self, order)

    def poles(self) -> "Poles":
        return scalar_poles(self)

    def __repr__(self):
        return f"Scalar({str(self)!r})"

    def __str__(self):
        return f"({_poly_str(self.num)})/({_poly_str(self.den)})"

    def short(self) -> str:
        """Human oriented form; omits a trivial denominator."""
        if len(self.den) == 1:
            return _poly_str(self.num)
        return str(self)


def _finish(num, den):
    """Make ``den`` monic; inputs already coprime."""
    if not den:
        raise DivisionByZero("division by the zero Scalar")
    if not num:
        return ZERO
    lc = den[-1]
    if lc != _GR_ONE:
        inv = lc.inverse()
        num = tuple(c * inv for c in num)
        den = tuple(c * inv for c in den)
    return Scalar._raw(num, den)


def _normalize(num, den):
    if not den:
        raise DivisionByZero("division by the zero Scalar")
    if not num:
        return ZERO
    if len(den) > 1:
        g = _pgcd(num, den)
        if len(g) > 1:
            num, den = _pquo(num, g), _pquo(den, g)
    return _finish(num, den)


ZERO = Scalar._raw((), _P_ONE)
ONE = Scalar._raw(_P_ONE, _P_ONE)


def scalar_arith(a: Scalar, b: Scalar, op: str) -> Scalar:
    """Field operation ``op`` in {'add', 'sub', 'mul', 'div'}."""
    a, b = Scalar.coerce(a), Scalar.coerce(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def scalar_eval(a: Scalar, h) -> GaussRat:
    """Exact value of ``a`` at the numeric parameter ``h``."""
    a = Scalar.coerce(a)
    h = GaussRat.coerce(h)
    if not a.num:
        return _GR_ZERO
    d = _peval(a.den, h)
    if not d:
        raise EvalAtPole(h)
    return _peval(a.num, h) / d


@dataclass(frozen=True)
class TaylorSeries:
    coeffs: tuple

    def __getitem__(self, r):
        return self.coeffs[r]

    def __len__(self):
        return len(self.coeffs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1


def scalar_taylor(a: Scalar, order: int) -> TaylorSeries:
    """Power series of ``a`` at h = 0 through ``h**order``."""
    a = Scalar.coerce(a)
    if order < 0:
        raise ValueError("order must be nonnegative")
    d0 = a.den[0]
    if not d0:
        raise NotRegularAtZero(f"{a} has a pole at h = 0")
    inv = d0.inverse()
    num, den = a.num, a.den
    out = []
    for k in range(order + 1):
        acc = num[k] if k < len(num) else _GR_ZERO
        for j in range(1, min(k, len(den) - 1) + 1):
            acc = acc - den[j] * out[k - j]
        out.append(acc * inv)
    return TaylorSeries(tuple(out))


@dataclass(frozen=True)
class Poles:
    """Zeros of a denominator.

    ``roots`` are the roots lying in Q(i); ``factors`` collects the monic
    remainder (as coefficient tuples) whose roots are not in Q(i).
    """

    roots: frozenset
    factors: tuple = ()

    def __iter__(self):
        return iter(sorted(self.roots, key=lambda r: (r.re, r.im)))

    def __len__(self):
        return len(self.roots)

    def __contains__(self, x):
        return GaussRat.coerce(x) in self.roots

    def is_empty(self) -> bool:
        return not self.roots and not self.factors

    def factor_strings(self):
        return [_poly_str(f) for f in self.factors]

    def __str__(self):
        text = "{" + ", ".join(str(r) for r in self) + "}"
        for f in self.factor_strings():
            text += f" + roots of ({f})"
        return text


def scalar_poles(a: Scalar) -> Poles:
    """Exact pole set of ``a`` (roots of its reduced denominator)."""
    a = Scalar.coerce(a)
    den = a.den
    if len(den) == 1:
        return Poles(frozenset())
    g = _pgcd(den, _pderiv(den))
    sqf = _pquo(den, g) if len(g) > 1 else den
    roots = []
    rest = sqf
    for cand in _root_candidates(sqf):
        if len(rest) > 1 and not _peval(rest, cand) and cand not in roots:
            roots.append(cand)
            rest = _pquo(rest, (-cand, _GR_ONE))
    factors = (rest,) if len(rest) > 1 else ()
    return Poles(frozenset(roots), factors)


def _root_candidates(p):
    """Gaussian-rational candidates for the roots of ``p``.

    Numerical roots are recovered as rationals whose denominators are
    bounded by the rational root theorem; callers verify each exactly.
    """
    import mpmath
    from mpmath.libmp import to_rational

    # clear denominators: Gaussian integer coefficients
    lcm = 1
    for c in p:
        lcm = lcm * c.d // gcd(lcm, c.d)
    ints = [(c.a * (lcm // c.d), c.b * (lcm // c.d)) for c in p]
    if len(ints) == 2:
        return [-(p[0] / p[1])]
    lead = ints[-1]
    bound = max(1, lead[0] * lead[0] + lead[1] * lead[1])
    digits = 2 * len(str(bound)) + 30
    with mpmath.workdps(digits):
        coeffs = [mpmath.mpc(re, im) for re, im in reversed(ints)]
        try:
            approx = mpmath.polyroots(coeffs, maxsteps=400, extraprec=4 * digits)
        except mpmath.libmp.NoConvergence:
            approx = mpmath.polyroots(coeffs, maxsteps=4000, extraprec=8 * digits, error=False)
        out = []
        for r in approx:
            re = Fraction(*to_rational(mpmath.mpf(mpmath.re(r))._mpf_))
            im = Fraction(*to_rational(mpmath.mpf(mpmath.im(r))._mpf_))
            out.append(GaussRat(re.limit_denominator(bound), im.limit_denominator(bound)))
    return out


def parse_scalar(text: str) -> Scalar:
    """Parse the textual form produced by ``str(Scalar)`` (or any expression in h)."""
    from .expr import parse_scalar_expr

    return parse_scalar_expr(text)
