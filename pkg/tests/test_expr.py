import math
import zlib

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from lorentz_weingarten.errors import DomainError, ParseError
from lorentz_weingarten.expr import (
    BinOp, Call, Jet2, Neg, Num, Var, compile_jet, eval_jet, eval_value, evaluate, parse,
    to_source,
)


def fd_derivs(f, u, h=1e-3):
    """Central differences with one Richardson step."""
    def d(s):
        fp, f0, fm = f(u + s), f(u), f(u - s)
        return (fp - fm) / (2 * s), (fp - 2 * f0 + fm) / (s * s)

    (a1, a2), (b1, b2) = d(h), d(h / 2)
    return (4 * b1 - a1) / 3, (4 * b2 - a2) / 3


@pytest.mark.parametrize("text, u, expected", [
    ("u^2 - 3", 2.0, (1.0, 4.0, 2.0)),
    ("log(u)", 1.0, (0.0, 1.0, -1.0)),
    ("sin(u)", 0.0, (0.0, 1.0, 0.0)),
])
def test_eval_jet_examples(text, u, expected):
    j = eval_jet(parse(text), u)
    assert (j.v0, j.v1, j.v2) == pytest.approx(expected, abs=1e-15)


@pytest.mark.parametrize("text, expected", [("2^3", 8.0), ("abs(-2)", 2.0), ("pow(2, 10)", 1024.0),
                                            ("-2^2", -4.0), ("2^3^2", 512.0), ("1 - 2 - 3", -4.0),
                                            ("8/2/2", 2.0), ("2*pi", 2 * math.pi)])
def test_eval_examples(text, expected):
    assert evaluate(parse(text), 0.0) == pytest.approx(expected, rel=1e-15)


def test_eval_alias():
    assert eval_value is evaluate


def test_sqrt_of_negative_is_domain_error():
    with pytest.raises(DomainError):
        evaluate(parse("sqrt(-1)"), 0.0)


@pytest.mark.parametrize("text, u", [("log(u)", 0.0), ("1/u", 0.0), ("u^0.5", -1.0),
                                     ("sqrt(u)", 0.0), ("exp(u)", 1e4)])
def test_jet_domain_errors(text, u):
    with pytest.raises(DomainError):
        eval_jet(parse(text), u)


def test_domain_error_names_the_subexpression():
    with pytest.raises(DomainError, match="log"):
        eval_jet(parse("1 + log(u - 3)"), 1.0)


def test_latex_style_expression_parses():
    e = parse("sqrt(u*(1+u)) - asinh(sqrt(u))")
    j = eval_jet(e, 1.0)
    assert j.v0 == pytest.approx(math.sqrt(2) - math.asinh(1))
    # slope of this profile is sqrt(u / (1 + u))
    assert j.v1 == pytest.approx(math.sqrt(0.5))


def test_distinct_parses():
    assert parse("u^2 - 3") != parse("2 - u^2")
    assert evaluate(parse("u^2 - 3"), 2.0) == 1.0
    assert evaluate(parse("2 - u^2"), 2.0) == -2.0


@pytest.mark.parametrize("text, offset", [
    ("sin(", 4), ("foo(u)", 0), ("u + ", 4), ("(u", 2), ("u)", 1), ("pow(u)", 5),
    ("sin(u, u)", 8), ("", 0), ("u $ 2", 2),
])
def test_parse_errors_report_offsets(text, offset):
    with pytest.raises(ParseError) as info:
        parse(text)
    assert info.value.offset == offset


def test_jet_arithmetic_rules():
    a, b = Jet2(2.0, 3.0, 5.0), Jet2(7.0, 11.0, 13.0)
    p = a * b
    assert (p.v0, p.v1, p.v2) == (14.0, 2 * 11 + 3 * 7, 5 * 7 + 2 * 3 * 11 + 2 * 13)
    q = a / b
    ref = fd_derivs(lambda t: (2 + 3 * t + 2.5 * t * t) / (7 + 11 * t + 6.5 * t * t), 0.0)
    assert q.v1 == pytest.approx(ref[0], rel=1e-8)
    assert q.v2 == pytest.approx(ref[1], rel=1e-7)


FUNCTIONS = [
    ("sin(2*u + 1)", (-3, 3)), ("cos(u*u)", (-2, 2)), ("sinh(u)", (-2, 2)), ("cosh(u/2)", (-3, 3)),
    ("exp(-u)", (-2, 2)), ("log(u)", (0.2, 4)), ("sqrt(u + 1)", (-0.8, 3)), ("asinh(3*u)", (-2, 2)),
    ("abs(u)", (0.1, 2)), ("abs(u)", (-2, -0.1)), ("pow(u, 2.5)", (0.2, 3)), ("u^(-1.5)", (0.3, 3)),
    ("u^3 - 2*u", (-2, 2)), ("(1 + u)/(2 + u*u)", (-2, 2)), ("2^u", (-2, 2)), ("u^u", (0.3, 2)),
]


@pytest.mark.parametrize("text, interval", FUNCTIONS)
def test_jets_match_finite_differences(text, interval):
    e = parse(text)
    us = np.random.default_rng(zlib.crc32(text.encode())).uniform(*interval, 200)
    for u in us:
        j = eval_jet(e, float(u))
        d1, d2 = fd_derivs(lambda t: evaluate(e, t), float(u))
        assert abs(j.v1 - d1) <= 1e-7 * max(1.0, abs(j.v1))
        assert abs(j.v2 - d2) <= 1e-7 * max(1.0, abs(j.v2))
        assert j.v0 == pytest.approx(evaluate(e, float(u)), rel=1e-15, abs=1e-300)


@settings(max_examples=100, deadline=None)
@given(st.floats(0.1, 5), st.floats(-3, 3))
def test_caret_matches_pow(u, a):
    x = evaluate(parse(f"u^({a!r})"), u)
    y = evaluate(parse(f"pow(u, {a!r})"), u)
    assert x == pytest.approx(y, rel=1e-14)


leaves = st.one_of(st.just(Var()), st.floats(-3, 3, allow_nan=False).map(Num))


def _extend(children):
    unary = st.sampled_from(["sin", "cos", "sinh", "asinh", "abs", "exp"])
    return st.one_of(
        st.tuples(st.sampled_from("+-*/^"), children, children).map(lambda t: BinOp(*t)),
        children.map(Neg),
        st.tuples(unary, children).map(lambda t: Call(t[0], (t[1],))),
        st.tuples(children, children).map(lambda t: Call("pow", t)),
        children.map(lambda c: Call("sqrt", (BinOp("+", Num(1.0), BinOp("*", c, c)),))),
    )


trees = st.recursive(leaves, _extend, max_leaves=12)


def _safe(f, *args):
    try:
        return ("ok", f(*args))
    except DomainError:
        return ("err", None)


@settings(max_examples=300, deadline=None)
@given(trees, st.floats(-2, 2))
def test_printer_round_trip(tree, u):
    again = parse(to_source(tree))
    a, b = _safe(evaluate, tree, u), _safe(evaluate, again, u)
    assert a[0] == b[0]
    if a[0] == "ok":
        assume(math.isfinite(a[1]))
        assert b[1] == pytest.approx(a[1], rel=1e-14, abs=1e-300)


@settings(max_examples=100, deadline=None)
@given(trees)
def test_printer_is_canonical(tree):
    text = to_source(tree)
    assert to_source(parse(text)) == to_source(parse(to_source(parse(text))))


def test_compile_jet():
    f = compile_jet("u^2")
    assert f(3.0) == Jet2(9.0, 6.0, 2.0)
