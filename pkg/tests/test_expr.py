import math

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from grossdiff.core import from_finite, normalize
from grossdiff.errors import EvaluationError, ParseError
from grossdiff.expr import (
    FUNCTION_NAMES,
    Binary,
    ComplexDomain,
    Const,
    GrossDomain,
    RealDomain,
    Unary,
    Var,
    evaluate,
    parse,
    to_text,
)

X = Var()


# -- parsing ---------------------------------------------------------------------


def test_worked_expressions_parse():
    assert parse("x*x*x") == Binary("*", Binary("*", X, X), X)
    assert parse("x + sin(x)") == Binary("+", X, Unary("sin", X))
    assert parse("(x*x+1)/x") == Binary("/", Binary("+", Binary("*", X, X), Const(1.0)), X)


@pytest.mark.parametrize(
    "text, tree",
    [
        ("-x^2", Unary("neg", Binary("^", X, Const(2.0)))),
        ("(-x)^2", Binary("^", Unary("neg", X), Const(2.0))),
        ("x^-1.5", Binary("^", X, Const(-1.5))),
        ("1 - 2 - x", Binary("-", Binary("-", Const(1.0), Const(2.0)), X)),
        ("8 / 4 / x", Binary("/", Binary("/", Const(8.0), Const(4.0)), X)),
        ("2 * -x", Binary("*", Const(2.0), Unary("neg", X))),
        ("--x", Unary("neg", Unary("neg", X))),
        ("1.5e-3 + .5", Binary("+", Const(1.5e-3), Const(0.5))),
        ("ln(sqrt(exp(cos(x))))", Unary("ln", Unary("sqrt", Unary("exp", Unary("cos", X))))),
    ],
)
def test_precedence_and_associativity(text, tree):
    assert parse(text) == tree


def test_spans_are_byte_offsets():
    e = parse("x + sin(x)")
    assert e.span == (0, 10)
    assert e.right.span == (4, 10)
    e = parse("(x*x + 1)/x")
    assert e.left.span == (1, 8)


@pytest.mark.parametrize(
    "text, offset",
    [
        ("x +", 3),
        ("(x", 2),
        ("x x", 2),
        ("2 ^ x", 4),
        ("x $ 1", 2),
        ("", 0),
        ("x + ü + 1", 4),
        ("ü + y", 0),
        ("1 + ü", 4),
    ],
)
def test_parse_errors(text, offset):
    with pytest.raises(ParseError) as info:
        parse(text)
    assert info.value.offset == offset
    assert 0 <= info.value.offset <= len(text.encode()) + 1


def test_byte_offset_after_multibyte_whitespace():
    # U+3000 is whitespace and three bytes in UTF-8
    with pytest.raises(ParseError) as info:
        parse("x　+")
    assert info.value.offset == 5


def test_unknown_function_lists_valid_names():
    with pytest.raises(ParseError) as info:
        parse("tan(x)")
    for name in FUNCTION_NAMES:
        assert name in info.value.expected
    assert info.value.found == "'tan'"


def test_free_identifier_rejected():
    with pytest.raises(ParseError):
        parse("x + y")


# -- printing ------------------------------------------------------------------------


def test_to_text_examples():
    assert to_text(Binary("*", X, X)) == "x * x"
    assert to_text(parse("(x*x+1)/x")) == "(x * x + 1) / x"
    assert to_text(Unary("neg", Const(1.0))) == "-1"
    assert to_text(parse("x - (x - 1)")) == "x - (x - 1)"
    assert to_text(parse("(x^2)^3")) == "(x^2)^3"
    assert to_text(parse("-(x+1)")) == "-(x + 1)"


leaf = st.one_of(
    st.just(Var()),
    st.builds(Const, st.floats(min_value=0.0, max_value=1e300, allow_nan=False, allow_infinity=False)),
    st.builds(Const, st.integers(0, 1000).map(float)),
)
exponent = st.one_of(
    st.integers(-6, 6).map(float),
    st.floats(-1e6, 1e6, allow_nan=False, allow_infinity=False),
)


def exprs(depth=8, leaves=leaf, exponents=exponent):
    if depth == 0:
        return leaves
    sub = st.deferred(lambda: exprs(depth - 1, leaves, exponents))
    return st.one_of(
        leaves,
        st.builds(Unary, st.sampled_from(("neg",) + FUNCTION_NAMES), sub),
        st.builds(Binary, st.sampled_from("+-*/"), sub, sub),
        st.builds(lambda b, n: Binary("^", b, Const(n)), sub, exponents),
    )


@settings(max_examples=300)
@given(exprs())
def test_round_trip(e):
    assert parse(to_text(e)) == e


# -- evaluation -------------------------------------------------------------------------


def test_eval_examples():
    assert evaluate(parse("x*x*x"), 5, RealDomain()) == 125.0
    assert evaluate(parse("0"), normalize([(0, 3), (-1, 1)], -3), GrossDomain()) == 0
    r = evaluate(parse("(x*x+1)/x"), normalize([(0, 3), (-1, 1)], -3), GrossDomain())
    assert r.digits() == pytest.approx([3.333333, 0.888889, 0.037037, -0.0123457], abs=1e-6)


def test_eval_error_carries_span():
    with pytest.raises(EvaluationError) as info:
        evaluate(parse("1 + ln(x - 2)"), 1.0, RealDomain())
    assert info.value.span == (4, 13)
    with pytest.raises(EvaluationError) as info:
        evaluate(parse("x + sqrt(x - 3)"), normalize([(0, 3), (-1, 1)], -2), GrossDomain(-2))
    assert info.value.span == (4, 15)


def test_division_by_infinitesimal_is_infinite_not_an_error():
    r = evaluate(parse("1/(x - 3)"), normalize([(0, 3), (-1, 1)], -2), GrossDomain(-2))
    assert r.has_infinite_part


def test_integer_exponent_uses_repeated_multiplication():
    x = normalize([(0, 2.0), (-1, 1.0)], -3)
    a = evaluate(parse("x^3"), x, GrossDomain())
    b = evaluate(parse("x*x*x"), x, GrossDomain())
    assert a == b
    assert evaluate(parse("x^-2"), 2.0, RealDomain()) == 0.25
    with pytest.raises(EvaluationError):
        evaluate(parse("x^-2"), 0.0, RealDomain())


small_leaf = st.one_of(st.just(Var()), st.builds(Const, st.floats(0.0, 10.0)))
small_exponent = st.one_of(st.integers(-3, 4).map(float), st.sampled_from([0.5, 1.5, -0.5, 2.25]))
# Subnormal points overflow 1/x to inf, where real and complex pow disagree.
points = st.floats(-5, 5, allow_nan=False).filter(lambda v: v == 0 or abs(v) > 1e-300)


def _rel_close(a, b, tol=1e-12):
    return abs(a - b) <= tol * max(abs(a), abs(b), 1e-300)


def _safe(fn):
    try:
        v = fn()
    except EvaluationError:
        return None
    return v


@settings(max_examples=300)
@given(exprs(4, small_leaf, small_exponent), points)
def test_domain_coherence(e, v):
    real = _safe(lambda: evaluate(e, v, RealDomain()))
    assume(real is not None and math.isfinite(real))
    gross = _safe(lambda: evaluate(e, from_finite(v), GrossDomain()))
    assume(gross is not None)
    assert _rel_close(real, gross.finite_part()), (to_text(e), real, gross)
    assert gross.is_finite


@settings(max_examples=300)
@given(exprs(4, small_leaf, small_exponent), points)
def test_complex_coherence(e, v):
    real = _safe(lambda: evaluate(e, v, RealDomain()))
    assume(real is not None and math.isfinite(real))
    z = _safe(lambda: evaluate(e, complex(v, 0.0), ComplexDomain()))
    assume(z is not None)
    assert z.imag == 0
    assert _rel_close(real, z.real), (to_text(e), real, z)
