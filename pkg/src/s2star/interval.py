"""Closed intervals with rational endpoints and outward rounding.

Endpoints are exact ``Fraction``s.  Operations that would otherwise produce
irrational values (square and n-th roots) round outward to a dyadic grid of
``prec`` bits, so every interval encloses the true real value.
"""

from __future__ import annotations

from fractions import Fraction
from math import floor, ceil

DEFAULT_PREC = 64


def iroot(n: int, k: int) -> int:
    """floor(n ** (1/k)) for n >= 0, by integer Newton iteration."""
    if n < 0:
        raise ValueError("negative radicand")
    if n < 2 or k == 1:
        return n
    x = 1 << ((n.bit_length() + k - 1) // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    while x**k > n:
        x -= 1
    while (x + 1) ** k <= n:
        x += 1
    return x


def _down(q: Fraction, prec: int) -> Fraction:
    s = 1 << prec
    return Fraction(floor(q * s), s)


def _up(q: Fraction, prec: int) -> Fraction:
    s = 1 << prec
    return Fraction(ceil(q * s), s)


class Interval:
    __slots__ = ("lo", "hi")

    def __init__(self, lo, hi=None):
        lo = Fraction(lo)
        hi = lo if hi is None else Fraction(hi)
        if lo > hi:
            raise ValueError(f"empty interval [{lo}, {hi}]")
        self.lo, self.hi = lo, hi

    @classmethod
    def exact(cls, q) -> "Interval":
        return cls(q, q)

    def is_exact(self) -> bool:
        return self.lo == self.hi

    def width(self) -> Fraction:
        return self.hi - self.lo

    def __contains__(self, x):
        return self.lo <= Fraction(x) <= self.hi

    def _c(self, other):
        return other if isinstance(other, Interval) else Interval(other)

    def __add__(self, other):
        o = self._c(other)
        return Interval(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __neg__(self):
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other):
        return self + (-self._c(other))

    def __rsub__(self, other):
        return self._c(other) - self

    def __mul__(self, other):
        o = self._c(other)
        ps = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return Interval(min(ps), max(ps))

    __rmul__ = __mul__

    def reciprocal(self) -> "Interval":
        if self.lo <= 0 <= self.hi:
            raise ZeroDivisionError("interval contains zero")
        return Interval(1 / self.hi, 1 / self.lo)

    def __truediv__(self, other):
        return self * self._c(other).reciprocal()

    def __rtruediv__(self, other):
        return self._c(other) * self.reciprocal()

    def __pow__(self, n: int):
        if n < 0:
            return self.reciprocal() ** (-n)
        if n == 0:
            return Interval(1)
        if self.lo >= 0:
            return Interval(self.lo**n, self.hi**n)
        if self.hi <= 0:
            a, b = (-self.hi) ** n, (-self.lo) ** n
            return Interval(a, b) if n % 2 == 0 else Interval(-b, -a)
        m = max(-self.lo, self.hi) ** n
        return Interval(0, m) if n % 2 == 0 else Interval(self.lo**n, self.hi**n)

    def root(self, k: int, prec: int = DEFAULT_PREC) -> "Interval":
        """Enclosure of the k-th root of a nonnegative interval."""
        if self.lo < 0:
            raise ValueError("root of an interval with negative part")
        return Interval(_root_down(self.lo, k, prec), _root_up(self.hi, k, prec))

    def sqrt(self, prec: int = DEFAULT_PREC) -> "Interval":
        return self.root(2, prec)

    def rpow(self, r: Fraction, prec: int = DEFAULT_PREC) -> "Interval":
        """x ** r for rational r >= 0 and x >= 0."""
        r = Fraction(r)
        if r < 0:
            raise ValueError("negative exponent")
        if r.denominator == 1:
            return self ** r.numerator
        return (self ** r.numerator).root(r.denominator, prec)

    def max(self, other):
        o = self._c(other)
        return Interval(max(self.lo, o.lo), max(self.hi, o.hi))

    def min(self, other):
        o = self._c(other)
        return Interval(min(self.lo, o.lo), min(self.hi, o.hi))

    def rounded(self, prec: int = DEFAULT_PREC) -> "Interval":
        return Interval(_down(self.lo, prec), _up(self.hi, prec))

    def certainly_le(self, other):
        """True if every point is <= every point of other, False if the
        reverse strict order holds, None when the intervals overlap."""
        o = self._c(other)
        if self.hi <= o.lo:
            return True
        if self.lo > o.hi:
            return False
        return None

    def __eq__(self, other):
        if not isinstance(other, Interval):
            try:
                other = Interval(other)
            except (TypeError, ValueError):
                return NotImplemented
        return self.lo == other.lo and self.hi == other.hi

    def __hash__(self):
        return hash((self.lo, self.hi))

    def __float__(self):
        return float((self.lo + self.hi) / 2)

    def __repr__(self):
        return f"Interval({self.lo}, {self.hi})"

    def __str__(self):
        if self.is_exact():
            return str(self.lo)
        return f"[{float(self.lo):.12g}, {float(self.hi):.12g}]"


def _root_down(q: Fraction, k: int, prec: int) -> Fraction:
    if q == 0:
        return Fraction(0)
    n, d = q.numerator, q.denominator
    r = iroot(n, k)
    if r**k == n:
        s = iroot(d, k)
        if s**k == d:
            return Fraction(r, s)
    scale = 1 << (prec * k)
    return Fraction(iroot(floor(q * scale), k), 1 << prec)


def _root_up(q: Fraction, k: int, prec: int) -> Fraction:
    if q == 0:
        return Fraction(0)
    n, d = q.numerator, q.denominator
    r = iroot(n, k)
    if r**k == n:
        s = iroot(d, k)
        if s**k == d:
            return Fraction(r, s)
    scale = 1 << (prec * k)
    v = ceil(q * scale)
    r = iroot(v, k)
    if r**k < v:
        r += 1
    return Fraction(r, 1 << prec)


def abs_gauss(c, prec: int = DEFAULT_PREC) -> Interval:
    """Enclosure of |c| for a Gaussian rational."""
    from .scalars import GaussRat

    c = GaussRat.coerce(c)
    if c.b == 0:
        return Interval(abs(c.re))
    if c.a == 0:
        return Interval(abs(c.im))
    return Interval(c.abs2()).sqrt(prec)


def certify_le(lhs_fn, rhs_fn, prec: int = DEFAULT_PREC, max_prec: int = 1024):
    """Decide lhs <= rhs for enclosures produced at increasing precision.

    ``lhs_fn`` and ``rhs_fn`` map a precision to an Interval.  Returns
    (verdict, lhs, rhs, prec) with verdict True, False or None (still
    inconclusive at ``max_prec``).
    """
    while True:
        lhs, rhs = lhs_fn(prec), rhs_fn(prec)
        v = lhs.certainly_le(rhs)
        if v is not None or prec >= max_prec:
            return v, lhs, rhs, prec
        prec *= 2
