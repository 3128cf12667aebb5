"""The enveloping algebra U(sl2) in the PBW basis Y^a H^b X^c.

Brackets: [H, X] = 2X, [H, Y] = -2Y, [X, Y] = H, the normalization under
which (X^n Y^n)_0 = n! H(H-1)...(H-n+1).

Coefficients of an ``EnvElement`` are duck typed: ``Scalar`` for the
algebra proper, polynomials in group coordinates for the symbolic
s-function, or ``FlowPoly`` for exponentiated adjoint flows.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial

from .errors import NotInCartanPart, NotInNilpotentPart, NotNilpotent, ParseError, SingularBlock
from .linalg import inverse
from .scalars import GaussRat, Scalar

DEFAULT_LAMBDA = Fraction(8)

BRACKETS = {
    ("H", "X"): {"X": 2},
    ("H", "Y"): {"Y": -2},  # -2, not 1: the only value consistent with the (X^n Y^n)_0 closed form
    ("X", "Y"): {"H": 1},
}

_GEN_EXP = {"Y": (1, 0, 0), "H": (0, 1, 0), "X": (0, 0, 1)}


def bracket(z: str, w: str) -> dict:
    """[z, w] on basis names, as a dict name -> int."""
    if z == w:
        return {}
    if (z, w) in BRACKETS:
        return dict(BRACKETS[(z, w)])
    return {k: -v for k, v in BRACKETS[(w, z)].items()}


# ---------------------------------------------------------------------------
# integer polynomials in H (tuples, low degree first)


def _ip_trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def _ip_add(p, q):
    n = max(len(p), len(q))
    return _ip_trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def _ip_mul(p, q):
    if not p or not q:
        return ()
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return _ip_trim(out)


@lru_cache(maxsize=None)
def _ip_linpow(shift: int, b: int):
    """(H + shift)^b."""
    out = (1,)
    for _ in range(b):
        out = _ip_mul(out, (shift, 1))
    return out


def _ip_compose_shift(p, shift):
    """P(H + shift)."""
    out = ()
    for k, c in enumerate(p):
        if c:
            out = _ip_add(out, tuple(c * x for x in _ip_linpow(shift, k)))
    return out


@lru_cache(maxsize=None)
def _xy(c: int, d: int):
    """X^c Y^d = sum_k Y^(d-k) P_k(H) X^(c-k); returns {k: P_k}."""
    if c == 0 or d == 0:
        return {0: (1,)}
    prev = _xy(c - 1, d)
    out = {}
    for k, p in prev.items():
        i = d - k
        # X Y^i P(H) = Y^i P(H-2) X + Y^(i-1) (iH - i(i-1)) P(H)
        out[k] = _ip_add(out.get(k, ()), _ip_compose_shift(p, -2))
        if i > 0:
            q = _ip_mul((-i * (i - 1), i), p)
            out[k + 1] = _ip_add(out.get(k + 1, ()), q)
    return {k: p for k, p in out.items() if p}


@lru_cache(maxsize=None)
def mono_structure(b: int, c: int, d: int, e: int):
    """H^b X^c * Y^d H^e as a tuple of ((dy, h, dx), int) in PBW order."""
    out = {}
    for k, p in _xy(c, d).items():
        # H^b Y^m = Y^m (H - 2m)^b ; X^n H^e = (H - 2n)^e X^n
        poly = _ip_mul(_ip_mul(_ip_linpow(-2 * (d - k), b), p), _ip_linpow(-2 * (c - k), e))
        for hb, coeff in enumerate(poly):
            if coeff:
                key = (d - k, hb, c - k)
                out[key] = out.get(key, 0) + coeff
    return tuple((k, v) for k, v in sorted(out.items()) if v)


def mono_mul(m1, m2):
    a, b, c = m1
    d, e, f = m2
    return [((a + dy, hb, dx + f), n) for (dy, hb, dx), n in mono_structure(b, c, d, e)]


# ---------------------------------------------------------------------------


class EnvElement:
    """Finite sum of coeff * Y^a H^b X^c."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    @classmethod
    def gen(cls, name: str, coeff=None) -> "EnvElement":
        return cls({_GEN_EXP[name]: Scalar(1) if coeff is None else coeff})

    @classmethod
    def mono(cls, a: int, b: int, c: int, coeff=None) -> "EnvElement":
        return cls({(a, b, c): Scalar(1) if coeff is None else coeff})

    @classmethod
    def scalar(cls, c) -> "EnvElement":
        return cls({(0, 0, 0): c})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, EnvElement):
            if other == 0:
                return not self.terms
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __neg__(self):
        return EnvElement({k: -v for k, v in self.terms.items()})

    def __add__(self, other):
        if not isinstance(other, EnvElement):
            other = EnvElement.scalar(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out[k] + v if k in out else v
        return EnvElement(out)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, EnvElement):
            other = EnvElement.scalar(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, EnvElement):
            return pbw_mul(self, other)
        return EnvElement({k: v * other for k, v in self.terms.items()})

    def __rmul__(self, other):
        return EnvElement({k: other * v for k, v in self.terms.items()})

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power in U(sl2)")
        out = EnvElement.scalar(_one_like(self))
        for _ in range(n):
            out = pbw_mul(out, self)
        return out

    def map_coeffs(self, f) -> "EnvElement":
        return EnvElement({k: f(v) for k, v in self.terms.items()})

    def degree(self) -> int:
        """Filtration degree a + b + c."""
        return max((sum(k) for k in self.terms), default=0)

    def homogeneous_gradings(self):
        return {c - a for (a, _, c) in self.terms}

    def __repr__(self):
        return f"EnvElement({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (a, b, c), v in sorted(self.terms.items()):
            factors = []
            for name, e in (("Y", a), ("H", b), ("X", c)):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            coeff = str(v) if isinstance(v, Scalar) else f"({v})"
            parts.append("*".join([coeff] + factors))
        return " + ".join(parts)


def _one_like(e: EnvElement):
    for v in e.terms.values():
        return v - v + 1
    return Scalar(1)


def parse_env(text: str) -> EnvElement:
    """Parse an expression in X, H, Y, h (multiplication is noncommutative)."""
    from .expr import evaluate, parse_ast

    ast = parse_ast(text, ("X", "H", "Y", "h"))
    env = {n: EnvElement.gen(n) for n in "XHY"}
    env["h"] = EnvElement.scalar(Scalar.hbar())
    return evaluate(ast, env, lambda c: EnvElement.scalar(Scalar(c)))


def pbw_mul(a: EnvElement, b: EnvElement) -> EnvElement:
    out = {}
    for m1, c1 in a.terms.items():
        for m2, c2 in b.terms.items():
            c12 = c1 * c2
            if not c12:
                continue
            for key, n in mono_mul(m1, m2):
                t = c12 * n if n != 1 else c12
                out[key] = out[key] + t if key in out else t
    return EnvElement(out)


def antipode(a: EnvElement) -> EnvElement:
    out = EnvElement()
    for (ea, eb, ec), v in a.terms.items():
        sign = -1 if (ea + eb + ec) % 2 else 1
        # S(Y^a H^b X^c) = (-1)^(a+b+c) X^c H^b Y^a
        xh = pbw_mul(EnvElement.mono(0, 0, ec, v * sign), EnvElement.mono(0, eb, 0))
        out = out + pbw_mul(xh, EnvElement.mono(ea, 0, 0))
    return out


def project0(a: EnvElement) -> EnvElement:
    return EnvElement({k: v for k, v in a.terms.items() if k[0] == 0 and k[2] == 0})


def character(a: EnvElement, s):
    """The character H -> s applied to an element of U(h)."""
    bad = [k for k in a.terms if k[0] or k[2]]
    if bad:
        raise NotInCartanPart(f"monomial Y^{bad[0][0]} H^{bad[0][1]} X^{bad[0][2]} is outside U(h)")
    total = None
    for (_, b, _), v in sorted(a.terms.items()):
        term = v * s**b if b else v
        total = term if total is None else total + term
    return total if total is not None else Scalar(0)


def hbar_weight(lam=DEFAULT_LAMBDA) -> Scalar:
    """The character value lambda / h."""
    return Scalar(lam) / Scalar.hbar()


def pairing(y: EnvElement, x: EnvElement, lam=DEFAULT_LAMBDA) -> Scalar:
    if any(k[1] or k[2] for k in y.terms):
        raise NotInNilpotentPart("first argument must lie in U(n-)")
    if any(k[0] or k[1] for k in x.terms):
        raise NotInNilpotentPart("second argument must lie in U(n+)")
    return character(project0(pbw_mul(antipode(x), y)), hbar_weight(lam))


class DualBlock:
    """Gram matrix of the pairing in one degree and its inverse."""

    def __init__(self, degree, basis_minus, basis_plus, gram, inv):
        self.degree = degree
        self.basis_minus = basis_minus
        self.basis_plus = basis_plus
        self.gram = gram
        self.inverse = inv

    def __repr__(self):
        return f"DualBlock(degree={self.degree}, gram={self.gram}, inverse={self.inverse})"


def dual_basis_block(degree: int, lam=DEFAULT_LAMBDA) -> DualBlock:
    if degree < 0:
        raise ValueError("degree must be nonnegative")
    # homogeneous bases of U(n-) in degree -n and U(n+) in degree n
    minus = [EnvElement.mono(degree, 0, 0)]
    plus = [EnvElement.mono(0, 0, degree)]
    gram = [[pairing(y, x, lam) for x in plus] for y in minus]
    try:
        inv = inverse(gram)
    except SingularBlock:
        raise SingularBlock(f"pairing block of degree {degree} is singular") from None
    return DualBlock(degree, minus, plus, gram, inv)


class TwistElement:
    """Truncated twist: sum over n <= N of c_n Y^n (x) X^n."""

    def __init__(self, coeffs, lam):
        self.coeffs = tuple(coeffs)
        self.lam = Fraction(lam)

    @property
    def order(self):
        return len(self.coeffs) - 1

    def __getitem__(self, n):
        return self.coeffs[n][1]

    def __iter__(self):
        return iter(self.coeffs)

    def __repr__(self):
        return f"TwistElement(N={self.order}, lam={self.lam})"


def twist_closed_form(n: int, lam=DEFAULT_LAMBDA) -> Scalar:
    h = Scalar.hbar()
    lam = Scalar(lam)
    den = Scalar(factorial(n))
    for j in range(n):
        den = den * (lam - j * h)
    return Scalar((-1) ** n) * h**n / den


@lru_cache(maxsize=64)
def twist(N: int, lam=DEFAULT_LAMBDA) -> TwistElement:
    coeffs = []
    for n in range(N + 1):
        block = dual_basis_block(n, lam)
        coeffs.append((n, block.inverse[0][0]))
    return TwistElement(coeffs, lam)


# ---------------------------------------------------------------------------
# group elements and the adjoint action


def _conj(x):
    return x.conjugate()


class GroupElement:
    """k = [[u, -conj(v)], [v, conj(u)]] in SU(2) with exact rational entries."""

    __slots__ = ("u", "v")

    def __init__(self, u, v):
        u, v = GaussRat.coerce(u), GaussRat.coerce(v)
        if u.abs2() + v.abs2() != 1:
            raise ValueError(f"|u|^2 + |v|^2 = {u.abs2() + v.abs2()} != 1")
        self.u, self.v = u, v

    @classmethod
    def identity(cls):
        return cls(1, 0)

    def matrix(self):
        u, v = self.u, self.v
        return [[u, -_conj(v)], [v, _conj(u)]]

    def inverse(self) -> "GroupElement":
        return GroupElement(_conj(self.u), -self.v)

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        m = _matmul(self.matrix(), other.matrix())
        return GroupElement(m[0][0], m[1][0])

    def __eq__(self, other):
        return isinstance(other, GroupElement) and self.u == other.u and self.v == other.v

    def __hash__(self):
        return hash((self.u, self.v))

    def __repr__(self):
        return f"GroupElement{self}"

    def __str__(self):
        return f"({self.u}, {self.v})"


def parse_group_element(text: str) -> GroupElement:
    from .expr import parse_scalar_expr

    t = text.strip()
    if not (t.startswith("(") and t.endswith(")")) or t.count(",") != 1:
        raise ParseError("group element must look like (u, v)", 0, ("(u, v)",))
    parts = [p for p in t[1:-1].split(",")]
    vals = []
    for p in parts:
        s = parse_scalar_expr(p)
        if not s.is_constant():
            raise ParseError("group element entries must be constants", 0, ("Gaussian rational",))
        vals.append(s.constant_value())
    return GroupElement(*vals)


def _matmul(a, b):
    return [[a[i][0] * b[0][j] + a[i][1] * b[1][j] for j in range(2)] for i in range(2)]


_MATS = {
    "H": [[1, 0], [0, -1]],
    "X": [[0, 1], [0, 0]],
    "Y": [[0, 0], [1, 0]],
}


def _decompose(m):
    """Traceless 2x2 matrix -> (coeff of H, X, Y)."""
    return m[0][0], m[0][1], m[1][0]


def _images_from_conjugation(left, right, lift):
    """Images of H, X, Y under Z -> left Z right, as EnvElements."""
    imgs = {}
    for name, z in _MATS.items():
        m = _matmul(_matmul(left, z), right)
        ph, px, py = _decompose(m)
        terms = {}
        for gen, c in (("H", ph), ("X", px), ("Y", py)):
            if c:
                terms[_GEN_EXP[gen]] = lift(c)
        imgs[name] = EnvElement(terms)
    return imgs


def apply_homomorphism(a: EnvElement, imgs, one, reduce=None) -> EnvElement:
    """Extend generator images multiplicatively over PBW monomials."""
    powers = {n: [EnvElement.scalar(one)] for n in "YHX"}

    def power(name, e):
        lst = powers[name]
        while len(lst) <= e:
            nxt = pbw_mul(lst[-1], imgs[name])
            if reduce is not None:
                nxt = nxt.map_coeffs(reduce)
            lst.append(nxt)
        return lst[e]

    out = EnvElement()
    for (ea, eb, ec), v in a.terms.items():
        term = pbw_mul(pbw_mul(power("Y", ea), power("H", eb)), power("X", ec))
        out = out + term * v
    if reduce is not None:
        out = out.map_coeffs(reduce)
    return out


def ad_group(k: GroupElement, a: EnvElement) -> EnvElement:
    """Ad_k a, where Ad_k Z = k Z k^-1 on sl2."""
    imgs = _images_from_conjugation(k.matrix(), k.inverse().matrix(), Scalar)
    return apply_homomorphism(a, imgs, Scalar(1))


def s_function(a: EnvElement, k: GroupElement, s) -> Scalar:
    return character(project0(ad_group(k.inverse(), a)), s)


def s_function_symbolic(a: EnvElement, s):
    """s-function of ``a`` as a polynomial in the group coordinates (normal form)."""
    from .orbit import FreePoly, reduce_sphere

    U, Ub, V, Vb = (FreePoly.generator(n) for n in ("U", "Ubar", "V", "Vbar"))
    kinv = [[Ub, Vb], [-V, U]]
    k = [[U, -Vb], [V, Ub]]
    imgs = _images_from_conjugation(kinv, k, lambda c: c)
    one = FreePoly.constant(Scalar(1))
    img = apply_homomorphism(a, imgs, one, reduce=reduce_sphere)
    proj = project0(img)
    total = FreePoly()
    for (_, b, _), v in proj.terms.items():
        total = total + v * (Scalar.coerce(s) ** b)
    return reduce_sphere(total)


# ---------------------------------------------------------------------------
# polynomials in formal flow variables t_0, t_1, ...


class FlowPoly:
    """Sparse polynomial in flow variables with Scalar coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    @classmethod
    def coerce(cls, x) -> "FlowPoly":
        if isinstance(x, FlowPoly):
            return x
        return cls({(): Scalar.coerce(x)})

    @classmethod
    def var(cls, i: int) -> "FlowPoly":
        return cls({tuple([0] * i + [1]): Scalar(1)})

    @staticmethod
    def _norm(e):
        e = list(e)
        while e and e[-1] == 0:
            e.pop()
        return tuple(e)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, FlowPoly):
            try:
                other = FlowPoly.coerce(other)
            except TypeError:
                return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __neg__(self):
        return FlowPoly({k: -v for k, v in self.terms.items()})

    def __add__(self, other):
        other = FlowPoly.coerce(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out[k] + v if k in out else v
        return FlowPoly(out)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-FlowPoly.coerce(other))

    def __rsub__(self, other):
        return FlowPoly.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, FlowPoly):
            if isinstance(other, (int, Fraction, GaussRat, Scalar)):
                return FlowPoly({k: v * other for k, v in self.terms.items()})
            return NotImplemented
        out = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                n = max(len(k1), len(k2))
                k = self._norm(
                    (k1[i] if i < len(k1) else 0) + (k2[i] if i < len(k2) else 0) for i in range(n)
                )
                p = v1 * v2
                out[k] = out[k] + p if k in out else p
        return FlowPoly(out)

    __rmul__ = __mul__

    def coefficient(self, exps) -> Scalar:
        return self.terms.get(self._norm(exps), Scalar(0))

    def at_zero(self) -> Scalar:
        return self.terms.get((), Scalar(0))

    def __repr__(self):
        return f"FlowPoly({self.terms!r})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for k, v in sorted(self.terms.items()):
            mon = "*".join(f"t{i}^{e}" if e > 1 else f"t{i}" for i, e in enumerate(k) if e)
            parts.append(f"{v}" + (f"*{mon}" if mon else ""))
        return " + ".join(parts)


def ad_exp_poly(Z: str, a: EnvElement, var: int = 0, scale=1) -> EnvElement:
    """exp(scale * t_var * ad_Z) a, with FlowPoly coefficients."""
    if Z not in ("X", "Y"):
        raise NotNilpotent(f"ad_{Z} is not nilpotent")
    a = a.map_coeffs(FlowPoly.coerce)
    z = EnvElement.gen(Z, FlowPoly.coerce(1))
    t = FlowPoly.var(var) * Scalar(scale)
    out = a
    term = a
    n = 0
    tn = FlowPoly.coerce(1)
    while True:
        term = pbw_mul(z, term) - pbw_mul(term, z)
        if not term:
            break
        n += 1
        tn = tn * t
        out = out + term * (tn * Scalar(Fraction(1, factorial(n))))
        if n > 4 * (a.degree() + 2):
            raise AssertionError("adjoint flow failed to terminate")
    return out
