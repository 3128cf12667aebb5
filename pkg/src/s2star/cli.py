"""Command-line front end.

    s2star star "A" "A"
    s2star poles "B^2" "C^2"
    s2star twist --order 2
    s2star check --seed 7

Every command prints text by default or a single JSON document with --json.
Exit codes: 0 success, 1 mathematical error, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .errors import MathError, ParseError, S2StarError
from .expr import parse_expr
from .orbit import FreePoly, InvariantPoly, to_ABC
from .scalars import GaussRat, Scalar, parse_scalar, scalar_eval, scalar_poles
from .star import StarConfig, formal_expand, product_poles, star
from .uea import DEFAULT_LAMBDA, pairing, parse_env, twist

COMMANDS = ("star", "expand", "poles", "pair", "twist", "check", "seminorm", "continuity", "agree")


class UsageError(S2StarError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# -- argument helpers ------------------------------------------------------------


def _lambda(text: str) -> Fraction:
    try:
        lam = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"--lambda expects a positive rational, got {text!r}") from None
    if lam <= 0:
        raise UsageError(f"--lambda expects a positive rational, got {text!r}")
    return lam


def _hbar(text: str):
    if text == "symbolic":
        return None
    s = parse_scalar(text)
    if not s.is_constant():
        raise UsageError(f"--hbar expects 'symbolic' or a Gaussian rational, got {text!r}")
    return GaussRat.coerce(s.constant_value())


def _nonneg_rational(name):
    def conv(text):
        try:
            v = Fraction(text)
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"{name} expects a rational, got {text!r}") from None
        if v < 0:
            raise UsageError(f"{name} must be nonnegative")
        return v

    return conv


def _invariant(src: str) -> InvariantPoly:
    p = parse_expr(src)
    return to_ABC(p) if isinstance(p, FreePoly) else p


def _poly_rows(p: InvariantPoly):
    return [[*m, str(c)] for m, c in sorted(p.terms.items())]


def _interval(iv):
    return {"lo": str(iv.lo), "hi": str(iv.hi)}


# -- commands --------------------------------------------------------------------
# Each returns (result dict, text lines).


def cmd_star(args):
    cfg = StarConfig(args.lam, args.hbar)
    prod = star(_invariant(args.p), _invariant(args.q), cfg)
    return {"poly": _poly_rows(prod)}, [str(prod)]


def cmd_expand(args):
    order = 2 if args.order is None else args.order
    fp = formal_expand(_invariant(args.p), _invariant(args.q), order, StarConfig(args.lam))
    report = [{"order": r, "poly": _poly_rows(c)} for r, c in enumerate(fp.orders)]
    return {"report": report}, [f"C{r} = {c}" for r, c in enumerate(fp.orders)]


def cmd_poles(args):
    ps = product_poles(_invariant(args.p), _invariant(args.q), StarConfig(args.lam))
    report = [{"pole": str(r)} for r in ps] + [{"factor": f} for f in ps.factor_strings()]
    return {"report": report}, [str(ps)]


def cmd_pair(args):
    y, x = parse_env(args.p), parse_env(args.q)
    val = pairing(y, x, args.lam)
    if args.hbar is not None:
        val = scalar_eval(val, args.hbar)
    return {"report": [{"pairing": str(val)}]}, [str(val)]


def cmd_twist(args):
    order = 2 if args.order is None else args.order
    if order < 0:
        raise UsageError("--order must be nonnegative")
    tw = twist(order, args.lam)
    report, lines = [], []
    for n in range(order + 1):
        c = tw[n]
        ps = scalar_poles(c)
        report.append({"n": n, "c": str(c), "poles": [str(r) for r in ps]})
        lines.append(f"c{n} = {c}")
    return {"report": report}, lines


def cmd_check(args):
    from .suites import DEFAULT_SEED, run_all

    seed = DEFAULT_SEED if args.seed is None else args.seed
    results = run_all(seed, full=not args.quick)
    report = [
        {"name": r.name, "passed": r.passed, "detail": r.detail, "failures": [str(f) for f in r.failures[:5]]}
        for r in results
    ]
    lines = [f"seed {seed}"] + [f"{'PASS' if r.passed else 'FAIL'} {r.name}: {r.detail}" for r in results]
    failed = [r.name for r in results if not r.passed]
    return {"report": report, "seed": seed}, lines, (1 if failed else 0)


def cmd_seminorm(args):
    from .topology import SeminormParams, seminorm

    p = parse_expr(args.p)
    if args.hbar is not None:
        p = p.map_coeffs(lambda c: Scalar(scalar_eval(c, args.hbar)))
    basis = "UV" if isinstance(p, FreePoly) else "ABC"
    sp = SeminormParams(args.R, args.C, basis, args.lam)
    iv = seminorm(p, sp)
    return {"report": [{"basis": basis, "R": str(args.R), "C": str(args.C), **_interval(iv)}]}, [
        f"basis {basis}, R = {args.R}, C = {args.C}: {iv!s} (enclosure [{iv.lo}, {iv.hi}])"
    ]


def cmd_continuity(args):
    from .topology import SeminormParams, continuity_report, disc_constants

    D = 4 if args.degree is None else args.degree
    center = args.center if args.center is not None else GaussRat(Fraction(1, 2))
    radius = args.radius if args.radius is not None else Fraction(1, 4)
    disc = disc_constants(center, radius, D)
    rep = continuity_report(D, SeminormParams(args.R, args.C, "UV", args.lam), disc, StarConfig(args.lam), raise_on_fail=False)
    summ = rep.summary()
    summ.pop("runtime_s", None)  # keep output deterministic
    lines = [f"{k} = {v}" for k, v in summ.items()]
    return {"report": [summ]}, lines, (0 if rep.passed else 1)


def cmd_agree(args):
    from .karabegov import KarabegovConfig, karabegov_star

    p, q = _invariant(args.p), _invariant(args.q)
    k = karabegov_star(p, q, KarabegovConfig(args.lam).resolved(), degree=args.degree)
    s = star(p, q, StarConfig(args.lam))
    rec = {"karabegov": _poly_rows(k), "twist": _poly_rows(s), "equal": k == s}
    return {"report": [rec]}, [f"karabegov: {k}", f"twist: {s}", f"equal: {k == s}"]


HANDLERS = {
    "star": cmd_star,
    "expand": cmd_expand,
    "poles": cmd_poles,
    "pair": cmd_pair,
    "twist": cmd_twist,
    "check": cmd_check,
    "seminorm": cmd_seminorm,
    "continuity": cmd_continuity,
    "agree": cmd_agree,
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--lambda", dest="lam", type=str, default=str(DEFAULT_LAMBDA))
    common.add_argument("--hbar", type=str, default="symbolic")
    common.add_argument("--order", type=int)
    common.add_argument("--degree", type=int)
    common.add_argument("--R", type=str, default="0")
    common.add_argument("--C", type=str, default="1")
    common.add_argument("--seed", type=int)
    common.add_argument("--json", action="store_true")

    parser = _Parser(prog="s2star", description="Wick-type star product on the 2-sphere, in exact arithmetic.")
    # output format is read from argv, so the flag may also precede the command
    parser.add_argument("--json", action="store_true")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    two = {"star", "expand", "poles", "pair", "agree"}
    for name in COMMANDS:
        sp = sub.add_parser(name, parents=[common])
        if name in two:
            sp.add_argument("p")
            sp.add_argument("q")
        elif name == "seminorm":
            sp.add_argument("p")
        elif name == "check":
            sp.add_argument("--quick", action="store_true", help="smaller suite sizes")
        elif name == "continuity":
            sp.add_argument("--center", type=str)
            sp.add_argument("--radius", type=str)
    return parser


def _config(args) -> dict:
    return {
        "lambda": str(args.lam),
        "hbar": "symbolic" if args.hbar is None else str(args.hbar),
        "order": args.order,
        "degree": args.degree,
        "R": str(args.R),
        "C": str(args.C),
        "seed": args.seed,
    }


def _error_record(exc) -> dict:
    rec = {"type": type(exc).__name__, "message": str(exc)}
    if isinstance(exc, ParseError):
        rec["position"] = exc.position
        rec["expected"] = list(exc.expected)
    return rec


def _finish_args(args):
    args.lam = _lambda(args.lam)
    args.hbar = _hbar(args.hbar)
    args.R = _nonneg_rational("--R")(args.R)
    args.C = _nonneg_rational("--C")(args.C)
    if args.C == 0:
        raise UsageError("--C must be positive")
    if getattr(args, "center", None) is not None:
        c = parse_scalar(args.center)
        if not c.is_constant():
            raise UsageError("--center expects a Gaussian rational")
        args.center = GaussRat.coerce(c.constant_value())
    if getattr(args, "radius", None) is not None:
        args.radius = _nonneg_rational("--radius")(args.radius)


def run(argv, out=None) -> int:
    out = sys.stdout if out is None else out
    want_json = "--json" in argv
    command = next((a for a in argv if a in COMMANDS), None)
    doc = {"command": command, "config": {}, "result": None, "errors": []}
    lines = []
    code = 0
    try:
        args = build_parser().parse_args(argv)
        if args.command is None:
            raise UsageError(f"a command is required: one of {', '.join(COMMANDS)}")
        _finish_args(args)
        doc["config"] = _config(args)
        res = HANDLERS[args.command](args)
        if len(res) == 3:
            result, lines, code = res
        else:
            result, lines = res
        doc["result"] = result
    except (UsageError, ParseError) as exc:
        doc["errors"].append(_error_record(exc))
        lines = [f"error: {exc}"]
        code = 2
    except MathError as exc:
        doc["errors"].append(_error_record(exc))
        lines = [f"error: {exc}"]
        code = 1
    except (ValueError, ArithmeticError, S2StarError) as exc:
        doc["errors"].append(_error_record(exc))
        lines = [f"error: {exc}"]
        code = 1
    if want_json:
        out.write(json.dumps(doc, sort_keys=True) + "\n")
    else:
        for line in lines:
            out.write(line + "\n")
    return code


def main(argv=None) -> int:
    code = run(sys.argv[1:] if argv is None else list(argv))
    if argv is None:
        sys.exit(code)
    return code


if __name__ == "__main__":
    main()
