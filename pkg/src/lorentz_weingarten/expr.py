"""One-variable arithmetic expressions with order-2 forward-mode jets.

Grammar (``^`` binds tightest and is right-associative, then unary minus,
then ``* /``, then ``+ -``)::

    expr  := term (('+' | '-') term)*
    term  := unary (('*' | '/') unary)*
    unary := '-' unary | '+' unary | power
    power := atom ('^' unary)?
    atom  := NUMBER | 'u' | 'pi' | NAME '(' expr (',' expr)* ')' | '(' expr ')'
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Union

from .errors import DomainError, ParseError


@dataclass(frozen=True)
class Jet2:
    """Value and first two derivatives of a function of one variable."""

    v0: float
    v1: float = 0.0
    v2: float = 0.0

    @staticmethod
    def lift(x) -> Jet2:
        return x if isinstance(x, Jet2) else Jet2(float(x))

    @staticmethod
    def variable(u: float) -> Jet2:
        return Jet2(float(u), 1.0, 0.0)

    def is_constant(self) -> bool:
        return self.v1 == 0.0 and self.v2 == 0.0

    def __add__(self, other):
        o = Jet2.lift(other)
        return Jet2(self.v0 + o.v0, self.v1 + o.v1, self.v2 + o.v2)

    __radd__ = __add__

    def __neg__(self):
        return Jet2(-self.v0, -self.v1, -self.v2)

    def __sub__(self, other):
        return self + (-Jet2.lift(other))

    def __rsub__(self, other):
        return Jet2.lift(other) - self

    def __mul__(self, other):
        o = Jet2.lift(other)
        return Jet2(
            self.v0 * o.v0,
            self.v1 * o.v0 + self.v0 * o.v1,
            self.v2 * o.v0 + 2.0 * self.v1 * o.v1 + self.v0 * o.v2,
        )

    __rmul__ = __mul__

    def reciprocal(self) -> Jet2:
        if self.v0 == 0.0:
            raise ZeroDivisionError("jet division by a zero value")
        r = 1.0 / self.v0
        return self.chain(r, -r * r, 2.0 * r * r * r)

    def __truediv__(self, other):
        return self * Jet2.lift(other).reciprocal()

    def __rtruediv__(self, other):
        return Jet2.lift(other) * self.reciprocal()

    def chain(self, f0: float, f1: float, f2: float) -> Jet2:
        """Compose an outer function with value/derivatives (f0, f1, f2) at v0."""
        return Jet2(f0, f1 * self.v1, f2 * self.v1 * self.v1 + f1 * self.v2)


# ---------------------------------------------------------------------------
# AST


@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class Neg:
    operand: "Expr"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Call:
    name: str
    args: tuple


Expr = Union[Num, Var, Neg, BinOp, Call]

ARITY = {
    "sin": 1, "cos": 1, "sinh": 1, "cosh": 1, "exp": 1,
    "log": 1, "sqrt": 1, "asinh": 1, "abs": 1, "pow": 2,
}


# ---------------------------------------------------------------------------
# Parser

_TOKEN = re.compile(
    r"\s*(?:(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)|(?P<name>[A-Za-z_]\w*)|(?P<op>[-+*/^(),]))"
)


def _tokenize(source: str):
    pos, tokens = 0, []
    while pos < len(source):
        m = _TOKEN.match(source, pos)
        if m is None or m.end() == pos:
            if source[pos:].strip() == "":
                break
            bad = pos + (len(source[pos:]) - len(source[pos:].lstrip()))
            raise ParseError(f"unexpected character {source[bad]!r}", bad)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(("end", "", len(source)))
    return tokens


class _Parser:
    def __init__(self, source: str):
        self.tokens = _tokenize(source)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, text: str):
        kind, value, offset = self.take()
        if value != text or kind != "op":
            what = "end of input" if kind == "end" else repr(value)
            raise ParseError(f"expected {text!r}, found {what}", offset)

    def expr(self):
        node = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            node = BinOp(op, node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.peek()[1] in ("*", "/") and self.peek()[0] == "op":
            op = self.take()[1]
            node = BinOp(op, node, self.unary())
        return node

    def unary(self):
        kind, value, _ = self.peek()
        if kind == "op" and value == "-":
            self.take()
            return Neg(self.unary())
        if kind == "op" and value == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            return BinOp("^", base, self.unary())
        return base

    def atom(self):
        kind, value, offset = self.take()
        if kind == "num":
            return Num(float(value))
        if kind == "name":
            if value == "u":
                return Var()
            if value == "pi":
                return Num(math.pi)
            if value not in ARITY:
                raise ParseError(f"unknown identifier {value!r}", offset)
            self.expect("(")
            args = [self.expr()]
            while self.peek()[0] == "op" and self.peek()[1] == ",":
                self.take()
                args.append(self.expr())
            close = self.peek()
            self.expect(")")
            if len(args) != ARITY[value]:
                raise ParseError(
                    f"{value} takes {ARITY[value]} argument(s), got {len(args)}", close[2]
                )
            return Call(value, tuple(args))
        if kind == "op" and value == "(":
            node = self.expr()
            self.expect(")")
            return node
        what = "end of input" if kind == "end" else repr(value)
        raise ParseError(f"expected an expression, found {what}", offset)


def parse(source: str) -> Expr:
    if not source or not source.strip():
        raise ParseError("empty expression", 0)
    p = _Parser(source)
    node = p.expr()
    kind, value, offset = p.peek()
    if kind != "end":
        raise ParseError(f"trailing input {value!r}", offset)
    return node


def to_source(e: Expr) -> str:
    """Canonical, fully parenthesised text that parses back to an equal tree."""
    if isinstance(e, Num):
        text = repr(e.value)
        return f"({text})" if e.value < 0 else text
    if isinstance(e, Var):
        return "u"
    if isinstance(e, Neg):
        return f"(-{to_source(e.operand)})"
    if isinstance(e, BinOp):
        return f"({to_source(e.left)} {e.op} {to_source(e.right)})"
    return f"{e.name}({', '.join(to_source(a) for a in e.args)})"


# ---------------------------------------------------------------------------
# Evaluation


def _fail(e: Expr, why: str):
    raise DomainError(f"{why} in {to_source(e)}")


def _is_integer(x: float) -> bool:
    return math.isfinite(x) and x == math.floor(x)


def _jet_pow(e: Expr, base: Jet2, expo: Jet2) -> Jet2:
    if expo.is_constant():
        p = expo.v0
        b = base.v0
        if _is_integer(p):
            if b == 0.0 and p < 2:
                if p < 0:
                    _fail(e, "zero raised to a negative power")
                if p == 0:
                    return Jet2(1.0)
                return base  # p == 1
            return base.chain(b**p, p * b ** (p - 1), p * (p - 1) * b ** (p - 2))
        if b <= 0.0:
            _fail(e, "non-integer power of a non-positive base")
        return base.chain(b**p, p * b ** (p - 1), p * (p - 1) * b ** (p - 2))
    if base.v0 <= 0.0:
        _fail(e, "variable exponent needs a positive base")
    lb = base.chain(math.log(base.v0), 1.0 / base.v0, -1.0 / base.v0**2)
    g = expo * lb
    ev = math.exp(g.v0)
    return g.chain(ev, ev, ev)


def eval_jet(e: Expr, u: float) -> Jet2:
    """(f(u), f'(u), f''(u)) by forward-mode jet arithmetic."""
    try:
        return _jet(e, u)
    except (OverflowError, ZeroDivisionError) as exc:
        raise DomainError(f"{exc} in {to_source(e)}") from None


def _jet(e: Expr, u: float) -> Jet2:
    if isinstance(e, Num):
        return Jet2(e.value)
    if isinstance(e, Var):
        return Jet2.variable(u)
    if isinstance(e, Neg):
        return -_jet(e.operand, u)
    if isinstance(e, BinOp):
        a, b = _jet(e.left, u), _jet(e.right, u)
        if e.op == "+":
            return a + b
        if e.op == "-":
            return a - b
        if e.op == "*":
            return a * b
        if e.op == "/":
            if b.v0 == 0.0:
                _fail(e, "division by zero")
            return a / b
        return _jet_pow(e, a, b)
    args = [_jet(a, u) for a in e.args]
    x = args[0]
    t = x.v0
    name = e.name
    if name == "sin":
        return x.chain(math.sin(t), math.cos(t), -math.sin(t))
    if name == "cos":
        return x.chain(math.cos(t), -math.sin(t), -math.cos(t))
    if name == "sinh":
        return x.chain(math.sinh(t), math.cosh(t), math.sinh(t))
    if name == "cosh":
        return x.chain(math.cosh(t), math.sinh(t), math.cosh(t))
    if name == "exp":
        et = math.exp(t)
        return x.chain(et, et, et)
    if name == "log":
        if t <= 0.0:
            _fail(e, "log of a non-positive number")
        return x.chain(math.log(t), 1.0 / t, -1.0 / (t * t))
    if name == "sqrt":
        if t <= 0.0:
            _fail(e, "sqrt needs a positive argument to be differentiable")
        s = math.sqrt(t)
        return x.chain(s, 0.5 / s, -0.25 / (s * t))
    if name == "asinh":
        w = 1.0 + t * t
        return x.chain(math.asinh(t), w**-0.5, -t * w**-1.5)
    if name == "abs":
        if t == 0.0 and x.v1 != 0.0:
            _fail(e, "abs is not differentiable at 0")
        sgn = math.copysign(1.0, t) if t != 0.0 else 0.0
        return x.chain(abs(t), sgn, 0.0)
    return _jet_pow(e, x, args[1])


def _pow(e: Expr, b: float, p: float) -> float:
    if b == 0.0 and p < 0:
        _fail(e, "zero raised to a negative power")
    if b < 0.0 and not _is_integer(p):
        _fail(e, "non-integer power of a negative base")
    try:
        return float(b**p)
    except OverflowError:
        _fail(e, "overflow")


def evaluate(e: Expr, u: float) -> float:
    """Value of the expression at u (plain floating point, no derivatives)."""
    if isinstance(e, Num):
        return e.value
    if isinstance(e, Var):
        return float(u)
    if isinstance(e, Neg):
        return -evaluate(e.operand, u)
    if isinstance(e, BinOp):
        a, b = evaluate(e.left, u), evaluate(e.right, u)
        if e.op == "+":
            return a + b
        if e.op == "-":
            return a - b
        if e.op == "*":
            return a * b
        if e.op == "/":
            if b == 0.0:
                _fail(e, "division by zero")
            return a / b
        return _pow(e, a, b)
    args = [evaluate(a, u) for a in e.args]
    t = args[0]
    name = e.name
    if name == "log":
        if t <= 0.0:
            _fail(e, "log of a non-positive number")
        return math.log(t)
    if name == "sqrt":
        if t < 0.0:
            _fail(e, "sqrt of a negative number")
        return math.sqrt(t)
    if name == "pow":
        return _pow(e, t, args[1])
    fn = {"sin": math.sin, "cos": math.cos, "sinh": math.sinh, "cosh": math.cosh,
          "exp": math.exp, "asinh": math.asinh, "abs": abs}[name]
    try:
        return float(fn(t))
    except OverflowError:
        _fail(e, "overflow")


# public alias; ``eval`` would shadow the builtin
eval_value = evaluate


def compile_jet(source: str):
    """Parse once and return ``u -> Jet2``."""
    tree = parse(source)
    return lambda u: eval_jet(tree, u)
