import math
import time
from pathlib import Path

import numpy as np
import pytest

from wtransform.activations import Activation
from wtransform.exceptions import ParseError
from wtransform.models import Expression, LinearArgTerm, MonomialTerm, RbfTerm, TrigTerm
from wtransform.parser import parse, print_expression, tokenize
from wtransform.parser.lexer import TokenKind

SAMPLES = Path(__file__).parent / "fixtures" / "sample_texts"


def test_parse_polynomial_example():
    """
    The worked polynomial parses into three monomials in two variables.
    """
    e = parse((SAMPLES / "polynomial_example.txt").read_text(encoding="utf-8"))
    assert e.dimension == 2
    assert set(e.terms) == {
        MonomialTerm(1.0, (2, 3)),
        MonomialTerm(0.1, (4, 0)),
        MonomialTerm(0.1, (0, 4)),
    }


def test_parse_trig_example(rng):
    """
    The squared trigonometric example expands into trig and constant terms only
    and agrees with the unexpanded form pointwise.
    """
    e = parse((SAMPLES / "trig_example.txt").read_text(encoding="utf-8"))
    assert e.dimension == 2
    assert all(isinstance(t, (TrigTerm, MonomialTerm)) for t in e.terms)
    for x, y in rng.uniform(-3, 3, size=(20, 2)):
        direct = (
            2 * math.cos(x) - 3 * math.sin(y) + 4 * math.cos(x) * math.sin(y) - 8 * math.sin(x) * math.cos(y) + 4
        ) ** 2
        assert e.evaluate((x, y)) == pytest.approx(direct, rel=1e-12, abs=1e-11)


def test_tokens():
    kinds = [t.kind for t in tokenize("2.5e-1*x12^3")]
    assert kinds == [TokenKind.NUMBER, TokenKind.STAR, TokenKind.VAR, TokenKind.CARET, TokenKind.NUMBER, TokenKind.END]
    assert tokenize("x12")[0].index == 12


def test_dimension_inference_and_override():
    assert parse("x2").dimension == 2
    assert parse("x1", dimension=3).dimension == 3
    assert parse("rbf(amp=1, center=[0, 0, 0], width=1)").dimension == 3


def test_functions():
    assert parse("rbf(amp=-2, center=[1, 0.5], width=0.3)").terms == (RbfTerm(-2.0, (1.0, 0.5), 0.3),)
    assert parse("relu(x1 - 2*x2; sigma=0.5)").terms == (
        LinearArgTerm(1.0, Activation.RELU, (1.0, -2.0), 0.5),
    )
    assert parse("sin(0.5*x1)").terms == (LinearArgTerm(1.0, Activation.SIN, (0.5,)),)
    (damped,) = parse("exp(-0.25)*cos(x1)").terms
    assert damped.damping == 0.25


def test_sine_with_constant_phase():
    e = parse("sin(x1 + 0.3)")
    for x in (0.0, 0.4, 2.0):
        assert e.evaluate((x,)) == pytest.approx(math.sin(x + 0.3), rel=1e-14, abs=1e-15)


def test_zero_frequency_harmonic_is_constant():
    assert parse("cos(0*x1 + 0.5)").terms == (MonomialTerm(math.cos(0.5), (0,)),)


def test_zero_is_the_empty_expression():
    assert parse("0").is_zero()
    assert parse("x1 - x1").is_zero()
    assert print_expression(parse("0")) == "0"


@pytest.mark.parametrize("src, expected", [
    ("x1^2", "x1^2"),
    ("3*x1^2", "3*x1^2"),
    ("-x2", "-x2"),
    ("cos(x1)", "cos(x1)"),
    ("sin(2*x1)", "sin(2*x1)"),
    ("exp(-0.5)*cos(x1)", "exp(-0.5)*cos(x1)"),
    ("sign(x1 - x2)", "sign(x1 - x2)"),
    ("rbf(amp=1, center=[0], width=2)", "rbf(amp=1, center=[0], width=2)"),
])
def test_print_canonical_text(src, expected):
    assert print_expression(parse(src)) == expected


def test_print_with_precision():
    assert print_expression(parse("0.123456789*x1"), precision=3) == "0.123*x1"


def test_print_then_parse_reproduces_expression(random_expression):
    for _ in range(1000):
        e = random_expression(dimension=3, n_terms=4)
        text = print_expression(e)
        again = parse(text)
        assert again.dimension == e.dimension, text
        assert again.is_close(e, rel_tol=1e-14, abs_tol=1e-14), text


@pytest.mark.parametrize("e, expected", [
    (Expression.build(3, [MonomialTerm(2.0, (1, 0, 0))]), "2*x1 + 0*x3"),
    (Expression.build(2, [MonomialTerm(5.0, (0, 0))]), "5 + 0*x2"),
    (Expression.build(2, []), "0*x2"),
    (Expression.build(2, [RbfTerm(1.0, (0.0, 0.0), 1.0)]), "rbf(amp=1, center=[0, 0], width=1)"),
])
def test_print_keeps_unused_trailing_variables(e, expected):
    text = print_expression(e)
    assert text == expected
    assert parse(text) == e


def test_json_input():
    src = '{"dimension": 2, "terms": [{"family": "monomial", "coeff": 2.0, "exponents": [1, 0]}]}'
    assert parse(src) == Expression.build(2, [MonomialTerm(2.0, (1, 0))])


@pytest.mark.parametrize("src", [
    '{"dimension": 2, "terms": [{"family": "bogus"}]}',
    '{"dimension": 2, "terms": [{"family": "monomial", "coeff": 1.0, "exponents": [1]}]}',
    '{"dimension": 2,',
])
def test_invalid_json_input(src):
    with pytest.raises(ParseError):
        parse(src)


@pytest.mark.parametrize("src, start, end", [
    ("x1 + * x2", 5, 6),
    ("sign(x1 + 1)", 10, 11),
    ("x1^9", 2, 4),
    ("foo(x1)", 0, 3),
    ("x0", 0, 2),
    ("x65", 0, 3),
    ("x1 $ x2", 3, 4),
    ("(x1 + x2", 8, 8),
])
def test_error_spans(src, start, end):
    with pytest.raises(ParseError) as info:
        parse(src)
    assert (info.value.span.start, info.value.span.end) == (start, end)
    assert info.value.source == src


@pytest.mark.parametrize("src", [
    "",
    "   ",
    "relu(x1 + 2)",
    "sign(x1; sigma=-1)",
    "cos(0.5*x1)",
    "sin(0.5*x1 + 1)",
    "cos(x1; sigma=0.1)",
    "x1*cos(x1)",
    "sign(x1)*x2",
    "relu(x1)^2",
    "x3 + rbf(amp=1, center=[0, 0], width=1)",
    "rbf(amp=1, center=[0], width=0)",
    "x1^-1",
    "x1^1.5",
    "1e999",
    "exp(800)",
    "1e300*1e300",
])
def test_rejected_inputs(src):
    with pytest.raises(ParseError):
        parse(src)


def test_annotated_error():
    with pytest.raises(ParseError) as info:
        parse("x1 + * x2")
    lines = info.value.annotate("x1 + * x2").splitlines()
    assert lines[0].startswith("error: unexpected '*' at 5..6")
    assert lines[1] == "  x1 + * x2"
    assert lines[2] == "       ^"


def test_random_input_only_raises_parse_errors(rng):
    alphabet = list("x123+-*^()[],=;. 0.5e") + ["sin", "cos", "sign", "relu", "exp", "rbf", "sigma", "amp"]
    for _ in range(3000):
        src = "".join(rng.choice(alphabet, size=int(rng.integers(1, 16))))
        try:
            result = parse(src)
        except ParseError:
            continue
        assert isinstance(result, Expression)


def test_random_bytes_only_raise_parse_errors(rng):
    for i in range(100_000):
        raw = rng.integers(0, 256, size=int(rng.integers(0, 24)), dtype=np.uint8).tobytes()
        src = raw.decode("latin-1") if i % 2 else raw.decode("utf-8", errors="replace")
        try:
            result = parse(src)
        except ParseError as exc:
            assert exc.span.end <= len(src)
            continue
        assert isinstance(result, Expression)


def _sum_of_variables(n):
    return " + ".join(f"x{d}" for d in range(1, n + 1))


@pytest.mark.parametrize("src", [
    f"cos({_sum_of_variables(30)})",
    f"sin({_sum_of_variables(64)})",
    f"({_sum_of_variables(20)})^8",
    f"cos({_sum_of_variables(12)}) * cos({_sum_of_variables(12)})",
])
def test_oversized_expansions_are_rejected_quickly(src):
    start = time.perf_counter()
    with pytest.raises(ParseError) as info:
        parse(src)
    assert "limit" in info.value.message
    assert time.perf_counter() - start < 5.0


def test_harmonic_of_a_long_sum(rng):
    e = parse(f"cos({_sum_of_variables(10)} + 0.25)")
    assert len(e.terms) == 2 ** 9
    for x in rng.uniform(-2, 2, size=(5, 10)):
        assert e.evaluate(x) == pytest.approx(math.cos(x.sum() + 0.25), abs=1e-12)
    s = parse("sin(x1 + 2*x2 - x3)")
    for x in rng.uniform(-2, 2, size=(5, 3)):
        assert s.evaluate(x) == pytest.approx(math.sin(x[0] + 2 * x[1] - x[2]), abs=1e-13)
