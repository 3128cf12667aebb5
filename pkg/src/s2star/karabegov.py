"""The left/right operator representation in the chart z = v/u.

Functions on the sphere minus one point are written N(z, zbar) / (1 + z zbar)^m.
The fundamental field of a traceless Z = [[z11, z12], [z21, z22]] is

    P_Z d/dz + Q_Z d/dzbar,   P_Z = -z21 + (z11 - z22) z + z12 z^2,

with Q_Z the conjugate expression.  Which of d/dz, d/dzbar plays the (1,0)
role is decided by ``select_orientation``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import (
    BothOrientationsValid,
    ChartConversionFailed,
    NoOrientationValid,
    NoPreimageWithinDegree,
    NotTraceFree,
)
from .linalg import solve_with_nullspace
from .orbit import InvariantPoly, _add_into, leftinv, sample_points, spread_points, to_ABC
from .scalars import I, GaussRat, Scalar
from .uea import (
    DEFAULT_LAMBDA,
    EnvElement,
    GroupElement,
    ad_exp_poly,
    antipode,
    character,
    hbar_weight,
    pbw_mul,
    project0,
    s_function,
    s_function_symbolic,
)

ORIENTATIONS = ("dzbar", "dz")


class ChartFunction:
    """num(z, zbar) / (1 + z zbar)^m with num not divisible by 1 + z zbar."""

    __slots__ = ("num", "m")

    def __init__(self, num=None, m: int = 0):
        num = {k: v for k, v in (num or {}).items() if v}
        self.num, self.m = _reduce(num, m)

    @classmethod
    def constant(cls, c):
        return cls({(0, 0): Scalar.coerce(c)})

    @classmethod
    def from_invariant(cls, p: InvariantPoly) -> "ChartFunction":
        out = cls()
        for (eA, eB, eC), v in p.terms.items():
            out = out + (CHART_A**eA) * (CHART_B**eB) * (CHART_C**eC) * v
        return out

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        if not isinstance(other, ChartFunction):
            other = ChartFunction.constant(other)
        return self.m == other.m and self.num == other.num

    def __hash__(self):
        return hash((frozenset(self.num.items()), self.m))

    def _lift(self, m):
        """Numerator over (1 + w)^m, m >= self.m."""
        num = self.num
        for _ in range(m - self.m):
            out = dict(num)
            for (a, b), v in num.items():
                _add_into(out, (a + 1, b + 1), v)
            num = out
        return num

    def __add__(self, other):
        if not isinstance(other, ChartFunction):
            other = ChartFunction.constant(other)
        m = max(self.m, other.m)
        out = dict(self._lift(m))
        for k, v in other._lift(m).items():
            _add_into(out, k, v)
        return ChartFunction(out, m)

    __radd__ = __add__

    def __neg__(self):
        obj = object.__new__(ChartFunction)
        obj.num = {k: -v for k, v in self.num.items()}
        obj.m = self.m
        return obj

    def __sub__(self, other):
        if not isinstance(other, ChartFunction):
            other = ChartFunction.constant(other)
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, ChartFunction):
            c = Scalar.coerce(other)
            if not c:
                return ChartFunction()
            obj = object.__new__(ChartFunction)
            obj.num = {k: v * c for k, v in self.num.items()}
            obj.m = self.m
            return obj
        out = {}
        for (a1, b1), v1 in self.num.items():
            for (a2, b2), v2 in other.num.items():
                _add_into(out, (a1 + a2, b1 + b2), v1 * v2)
        return ChartFunction(out, self.m + other.m)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = ChartFunction.constant(1)
        for _ in range(n):
            out = out * self
        return out

    def d_z(self) -> "ChartFunction":
        # ((1+w) dN/dz - m zbar N) / (1+w)^(m+1)
        out = {}
        for (a, b), v in self.num.items():
            if a:
                _add_into(out, (a - 1, b), v * a)
                _add_into(out, (a, b + 1), v * a)
            if self.m:
                _add_into(out, (a, b + 1), v * (-self.m))
        return ChartFunction(out, self.m + 1)

    def d_zbar(self) -> "ChartFunction":
        out = {}
        for (a, b), v in self.num.items():
            if b:
                _add_into(out, (a, b - 1), v * b)
                _add_into(out, (a + 1, b), v * b)
            if self.m:
                _add_into(out, (a + 1, b), v * (-self.m))
        return ChartFunction(out, self.m + 1)

    def at(self, z) -> Scalar:
        """Value at the chart point z (zbar is its conjugate)."""
        z = GaussRat.coerce(z)
        zb = z.conjugate()
        total = Scalar(0)
        for (a, b), v in self.num.items():
            total = total + v * (z**a * zb**b)
        return total / Scalar((1 + z * zb) ** self.m)

    def at_origin(self) -> Scalar:
        return self.num.get((0, 0), Scalar(0))

    def to_invariant(self) -> InvariantPoly:
        return chart_to_abc(self)

    def __repr__(self):
        return f"ChartFunction({self})"

    def __str__(self):
        if not self.num:
            return "0"
        parts = []
        for (a, b), v in sorted(self.num.items()):
            mon = "*".join(f for f in (_pw("z", a), _pw("zbar", b)) if f)
            parts.append(f"{v}" + (f"*{mon}" if mon else ""))
        return f"({' + '.join(parts)})/(1 + z*zbar)^{self.m}"


def _pw(name, e):
    if e == 0:
        return ""
    return name if e == 1 else f"{name}^{e}"


def _reduce(num, m):
    """Cancel common factors of (1 + z zbar)."""
    while m and num:
        groups = {}
        for (a, b), v in num.items():
            groups.setdefault(a - b, {})[min(a, b)] = v
        ok = True
        for poly in groups.values():
            s = Scalar(0)
            for j, v in poly.items():
                s = s + (v if j % 2 == 0 else -v)
            if s:
                ok = False
                break
        if not ok:
            break
        out = {}
        for e, poly in groups.items():
            top = max(poly)
            # synthetic division by (w + 1)
            q = {}
            carry = Scalar(0)
            for j in range(top, 0, -1):
                c = poly.get(j, Scalar(0)) - carry
                q[j - 1] = c
                carry = c
            base = (e, 0) if e >= 0 else (0, -e)
            for j, v in q.items():
                if v:
                    out[(base[0] + j, base[1] + j)] = v
        num, m = out, m - 1
    return num, (m if num else 0)


CHART_A = ChartFunction({(0, 0): Scalar(1), (1, 1): Scalar(-1)}, 1)
CHART_B = ChartFunction({(1, 0): Scalar(1)}, 1)
CHART_C = ChartFunction({(0, 1): Scalar(1)}, 1)


def chart_to_abc(f: ChartFunction) -> InvariantPoly:
    """Rewrite z^a zbar^b / (1+w)^m via B, C, (1-A)/2 and (1+A)/2."""
    g = InvariantPoly.generators()
    A, B, C = g["A"], g["B"], g["C"]
    plus = (InvariantPoly.constant(1) + A) * Scalar(Fraction(1, 2))
    minus = (InvariantPoly.constant(1) - A) * Scalar(Fraction(1, 2))
    out = InvariantPoly()
    for (a, b), v in f.num.items():
        if max(a, b) > f.m:
            raise ChartConversionFailed(f"z^{a} zbar^{b} / (1+z zbar)^{f.m} is not a polynomial on the sphere")
        r = min(a, b)
        base = B ** (a - r) if a >= b else C ** (b - r)
        out = out + base * (minus**r) * (plus ** (f.m - max(a, b))) * v
    return out


# -- vector fields and operators ----------------------------------------------


@dataclass(frozen=True)
class ChartVectorField:
    P: ChartFunction  # coefficient of d/dz
    Q: ChartFunction  # coefficient of d/dzbar

    def apply(self, f: ChartFunction) -> ChartFunction:
        return self.P * f.d_z() + self.Q * f.d_zbar()


MATRICES = {
    "H": ((1, 0), (0, -1)),
    "X": ((0, 1), (0, 0)),
    "Y": ((0, 0), (1, 0)),
}


def fundamental_field(Z) -> ChartVectorField:
    """The orbit field of a traceless 2x2 matrix, or of a basis name."""
    if isinstance(Z, str):
        Z = MATRICES[Z]
    (z11, z12), (z21, z22) = [[GaussRat.coerce(x) for x in row] for row in Z]
    if z11 + z22:
        raise NotTraceFree("matrix must be trace free")
    d = z11 - z22
    P = ChartFunction({(0, 0): Scalar(-z21), (1, 0): Scalar(d), (2, 0): Scalar(z12)})
    # the same flow read off on zbar, extended complex-linearly in Z
    Q = ChartFunction({(0, 0): Scalar(z12), (0, 1): Scalar(-d), (0, 2): Scalar(-z21)})
    return ChartVectorField(P, Q)


@dataclass(frozen=True)
class KarabegovConfig:
    lam: Fraction = DEFAULT_LAMBDA
    orientation: str | None = None

    def resolved(self) -> "KarabegovConfig":
        if self.orientation is not None:
            return self
        return KarabegovConfig(self.lam, select_orientation(self.lam))


def _split(Z: str, orientation: str):
    v = fundamental_field(Z)
    zero = ChartFunction()
    if orientation == "dzbar":
        return ChartVectorField(zero, v.Q), ChartVectorField(v.P, zero)
    return ChartVectorField(v.P, zero), ChartVectorField(zero, v.Q)


@lru_cache(maxsize=None)
def _multipliers(lam):
    """(i/h) f_Z on the chart, with f_H, f_X, f_Y = i lam (A, B, C)."""
    c = Scalar(I) / Scalar.hbar() * Scalar(I * GaussRat(Fraction(lam)))
    return {"H": CHART_A * c, "X": CHART_B * c, "Y": CHART_C * c}


def opl(Z: str, f: ChartFunction, cfg: KarabegovConfig) -> ChartFunction:
    xi, _ = _split(Z, cfg.orientation)
    return xi.apply(f) - _multipliers(Fraction(cfg.lam))[Z] * f


def opr(Z: str, f: ChartFunction, cfg: KarabegovConfig) -> ChartFunction:
    _, eta = _split(Z, cfg.orientation)
    return eta.apply(f) + _multipliers(Fraction(cfg.lam))[Z] * f


def _apply_word(op, u: EnvElement, f: ChartFunction, cfg) -> ChartFunction:
    out = ChartFunction()
    for (a, b, c), v in u.terms.items():
        g = f
        for name, e in (("X", c), ("H", b), ("Y", a)):
            for _ in range(e):
                g = op(name, g, cfg)
        out = out + g * v
    return out


def Opl(u: EnvElement, f: ChartFunction, cfg: KarabegovConfig) -> ChartFunction:
    """The algebra representation generated by opl, applied to f."""
    return _apply_word(opl, u, f, cfg)


def Opr(u: EnvElement, f: ChartFunction, cfg: KarabegovConfig) -> ChartFunction:
    return _apply_word(opr, u, f, cfg)


def chart_point(k: GroupElement):
    if not k.u:
        raise ValueError("point lies outside the chart")
    return k.v / k.u


def _orientation_passes(orientation: str, lam) -> bool:
    cfg = KarabegovConfig(lam, orientation)
    xi_Y, _ = _split("Y", orientation)
    one = ChartFunction.constant(1)
    # opl(Y) must vanish at the base point as an operator
    if xi_Y.P.at_origin() or xi_Y.Q.at_origin() or opl("Y", one, cfg).at_origin():
        return False
    X, H, Y = (EnvElement.gen(n) for n in "XHY")
    s = hbar_weight(lam)
    pts = [k for k in spread_points(8) if k.u][:5]
    for u in (H, X, Y, X * Y):
        f = Opl(u, one, cfg)
        for k in pts:
            if f.at(chart_point(k)) != s_function(u, k, s):
                return False
    return True


@lru_cache(maxsize=None)
def select_orientation(lam=DEFAULT_LAMBDA) -> str:
    ok = [o for o in ORIENTATIONS if _orientation_passes(o, Fraction(lam))]
    if not ok:
        raise NoOrientationValid("neither chart orientation passes validation")
    if len(ok) > 1:
        raise BothOrientationsValid("both chart orientations pass validation")
    return ok[0]


# -- L map, preimages, product ----------------------------------------------------


def L_map(u: EnvElement, cfg: KarabegovConfig = KarabegovConfig()) -> InvariantPoly:
    return to_ABC(s_function_symbolic(u, hbar_weight(cfg.lam)))


def L_map_chart(u: EnvElement, cfg: KarabegovConfig = KarabegovConfig()) -> InvariantPoly:
    """Chart route: Opl(u) applied to the constant function 1."""
    cfg = cfg.resolved()
    return chart_to_abc(Opl(u, ChartFunction.constant(1), cfg))


def pbw_monomials(degree: int):
    return [(a, b, c) for d in range(degree + 1) for a in range(d + 1) for b in range(d + 1 - a) for c in [d - a - b]]


@lru_cache(maxsize=None)
def _L_mono(m, lam):
    return L_map(EnvElement.mono(*m), KarabegovConfig(lam))


def _abc_charge(k):
    return k[1] - k[2]


def preimage_system(p: InvariantPoly, degree: int, lam):
    """Per-charge systems (columns, matrix, rhs) for L(w) = p."""
    charges = {_abc_charge(k) for k in p.terms} or {0}
    systems = []
    for q in sorted(charges):
        cols = [m for m in pbw_monomials(degree) if m[2] - m[0] == q]
        images = [_L_mono(m, lam) for m in cols]
        rows = sorted({k for img in images for k in img.terms} | {k for k in p.terms if _abc_charge(k) == q})
        mat = [[img.coeff(*r) for img in images] for r in rows]
        rhs = [p.coeff(*r) if _abc_charge(r) == q else Scalar(0) for r in rows]
        systems.append((cols, mat, rhs))
    return systems


def solve_preimage(p: InvariantPoly, degree: int, cfg: KarabegovConfig = KarabegovConfig(), with_kernel=False):
    """Lowest-degree w with L(w) = p (searching filtration degrees 0..degree)."""
    lam = Fraction(cfg.lam)
    for d in range(degree + 1):
        w = EnvElement()
        kernel = []
        ok = True
        for cols, mat, rhs in preimage_system(p, d, lam):
            if not cols:
                if any(rhs):
                    ok = False
                    break
                continue
            x, null = solve_with_nullspace(mat, rhs)
            if x is None:
                ok = False
                break
            w = w + EnvElement({m: c for m, c in zip(cols, x)})
            kernel.extend(EnvElement({m: c for m, c in zip(cols, v)}) for v in null)
        if ok:
            return (w, kernel) if with_kernel else w
    raise NoPreimageWithinDegree(f"no preimage of {p} in filtration degree <= {degree}")


def karabegov_star(p: InvariantPoly, q: InvariantPoly, cfg: KarabegovConfig = KarabegovConfig(), degree=None, preimage=None):
    cfg = cfg.resolved()
    if preimage is None:
        preimage = solve_preimage(p, p.degree() if degree is None else degree, cfg)
    f = ChartFunction.from_invariant(q)
    return chart_to_abc(Opl(preimage, f, cfg))


# -- derivative identities at the identity --------------------------------------


def lie_derivative_identity_check(u: EnvElement, gens, side: str = "left", lam=DEFAULT_LAMBDA) -> bool:
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    gens = tuple(gens)
    if len(gens) > 4:
        raise ValueError("at most four derivatives")
    want = "X" if side == "left" else "Y"
    if any(z != want for z in gens):
        # sl2 has a single positive root, so tuples are powers of one generator
        raise ValueError(f"side {side!r} takes derivatives along {want} only")
    lhs = _flow_side(u, gens, lam)
    rhs = _algebraic_side(u, gens, side, lam)
    third = _symbolic_side(u, gens, lam)
    return lhs == rhs == third


def _flow_side(u, gens, lam):
    """Mixed derivative of s(u)(exp(t1 Z1) ... exp(tL ZL)) at t = 0."""
    a = u
    for i, z in enumerate(gens):
        a = ad_exp_poly(z, a, var=i, scale=-1)
    proj = project0(a)
    val = character(proj, hbar_weight(lam)) if proj else None
    if val is None:
        return Scalar(0)
    from .uea import FlowPoly

    return FlowPoly.coerce(val).coefficient([1] * len(gens))


def _algebraic_side(u, gens, side, lam):
    word = EnvElement.scalar(Scalar(1))
    for z in gens:
        word = pbw_mul(word, EnvElement.gen(z))
    if side == "left":
        a = pbw_mul(antipode(word), u)
    else:
        a = pbw_mul(u, word)
    return s_function(a, GroupElement.identity(), hbar_weight(lam))


def _symbolic_side(u, gens, lam):
    f = s_function_symbolic(u, hbar_weight(lam))
    for z in reversed(gens):
        f = leftinv(z, f)
    total = Scalar(0)
    # evaluate at U = 1, V = 0
    for m, v in f.terms.items():
        if m[2] == 0 and m[3] == 0:
            total = total + v
    return total


def kernel_from(p: InvariantPoly, degree: int, cfg: KarabegovConfig = KarabegovConfig()):
    return solve_preimage(p, degree, cfg, with_kernel=True)[1]


__all__ = [
    "ChartFunction",
    "ChartVectorField",
    "KarabegovConfig",
    "CHART_A",
    "CHART_B",
    "CHART_C",
    "chart_to_abc",
    "fundamental_field",
    "select_orientation",
    "opl",
    "opr",
    "Opl",
    "Opr",
    "L_map",
    "L_map_chart",
    "solve_preimage",
    "karabegov_star",
    "lie_derivative_identity_check",
    "sample_points",
]
