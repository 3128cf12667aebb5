"""Expression parsing for scalars and sphere polynomials.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := ('+' | '-')? atom ('^' nat)?
    atom   := IDENT | literal | '(' expr ')'

Literals are integers or ``p/q`` written without spaces; ``i`` is the
imaginary unit, so ``1/2-1/3*i`` is a Gaussian rational.  Division is only
allowed by subexpressions that involve ``h`` and literals.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import ParseError
from .scalars import GaussRat, I, Scalar

POLY_IDENTS = ("A", "B", "C", "U", "Ubar", "V", "Vbar", "h")
FREE_IDENTS = frozenset({"U", "Ubar", "V", "Vbar"})

_TOKEN = re.compile(r"\s*(?:(\d+/\d+|\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


def tokenize(src: str):
    toks = []
    pos = 0
    n = len(src)
    while pos < n:
        m = _TOKEN.match(src, pos)
        if m is None:  # trailing whitespace
            break
        if m.group(1) is not None:
            toks.append(("num", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            toks.append(("id", m.group(2), m.start(2)))
        else:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", m.start(3), ("operator", "literal", "identifier"))
            toks.append(("op", ch, m.start(3)))
        pos = m.end()
    toks.append(("end", "", len(src)))
    return toks


class _Parser:
    def __init__(self, src, idents):
        self.src = src
        self.idents = frozenset(idents) | {"i"}
        self.toks = tokenize(src)
        self.k = 0

    def peek(self):
        return self.toks[self.k]

    def take(self):
        t = self.toks[self.k]
        self.k += 1
        return t

    def fail(self, expected, tok=None):
        tok = tok or self.peek()
        what = "end of input" if tok[0] == "end" else repr(tok[1])
        raise ParseError(f"unexpected {what}", tok[2], tuple(expected))

    def parse(self):
        node = self.expr()
        if self.peek()[0] != "end":
            self.fail(("+", "-", "*", "/", "^", "end of input"))
        return node

    def expr(self):
        node = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            node = ("add" if op == "+" else "sub", node, self.term())
        return node

    def term(self):
        node = self.factor()
        while self.peek()[0] == "op" and self.peek()[1] in "*/":
            _, op, pos = self.take()
            rhs = self.factor()
            node = ("mul", node, rhs) if op == "*" else ("div", node, rhs, pos)
        return node

    def factor(self):
        t = self.peek()
        if t[0] == "op" and t[1] in "+-":
            self.take()
            inner = self.factor()
            return ("neg", inner) if t[1] == "-" else inner
        node = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            e = self.peek()
            if e[0] != "num" or "/" in e[1]:
                self.fail(("natural exponent",))
            self.take()
            node = ("pow", node, int(e[1]))
        return node

    def atom(self):
        t = self.peek()
        if t[0] == "num":
            self.take()
            if "/" in t[1]:
                p, q = t[1].split("/")
                if int(q) == 0:
                    raise ParseError("zero denominator in literal", t[2], ("nonzero denominator",))
                return ("const", GaussRat(Fraction(int(p), int(q))))
            return ("const", GaussRat(int(t[1])))
        if t[0] == "id":
            if t[1] not in self.idents:
                self.fail(("identifier in " + ", ".join(sorted(self.idents)),))
            self.take()
            if t[1] == "i":
                return ("const", I)
            return ("var", t[1])
        if t[0] == "op" and t[1] == "(":
            self.take()
            node = self.expr()
            if self.peek() != ("op", ")", self.peek()[2]):
                self.fail((")",))
            self.take()
            return node
        self.fail(("literal", "identifier", "("))


def parse_ast(src: str, idents=POLY_IDENTS):
    return _Parser(src, idents).parse()


def variables(node) -> set:
    tag = node[0]
    if tag == "var":
        return {node[1]}
    if tag == "const":
        return set()
    out = set()
    for child in node[1:]:
        if isinstance(child, tuple):
            out |= variables(child)
    return out


def evaluate(node, env, const):
    """Evaluate an AST; ``env`` maps identifiers to values, ``const`` lifts literals."""
    tag = node[0]
    if tag == "const":
        return const(node[1])
    if tag == "var":
        return env[node[1]]
    if tag == "neg":
        return -evaluate(node[1], env, const)
    if tag == "pow":
        return evaluate(node[1], env, const) ** node[2]
    a = evaluate(node[1], env, const)
    if tag == "div":
        if variables(node[2]) - {"h"}:
            raise ParseError("division is only allowed by scalars", node[3], ("scalar divisor",))
        b = evaluate(node[2], {"h": Scalar.hbar()}, Scalar.coerce)
        if not b:
            raise ParseError("division by zero", node[3], ("nonzero divisor",))
        return a / b
    b = evaluate(node[2], env, const)
    if tag == "add":
        return a + b
    if tag == "sub":
        return a - b
    if tag == "mul":
        return a * b
    raise AssertionError(tag)


def parse_scalar_expr(src: str) -> Scalar:
    ast = parse_ast(src, ("h",))
    return evaluate(ast, {"h": Scalar.hbar()}, Scalar.coerce)


def parse_expr(src: str):
    """Parse a sphere-function expression.

    Expressions mentioning U, Ubar, V or Vbar yield a ``FreePoly`` (with
    A, B, C substituted by their defining products); otherwise the result is
    an ``InvariantPoly`` in normal form.
    """
    from .orbit import FreePoly, InvariantPoly, embed_generators

    ast = parse_ast(src)
    names = variables(ast)
    h = Scalar.hbar()
    if names & FREE_IDENTS:
        env = dict(embed_generators())
        env.update(FreePoly.generators())
        env["h"] = FreePoly.constant(h)
        return evaluate(ast, env, FreePoly.constant)
    env = dict(InvariantPoly.generators())
    env["h"] = InvariantPoly.constant(h)
    return evaluate(ast, env, InvariantPoly.constant)
