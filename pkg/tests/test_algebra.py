import math

import numpy as np
import pytest

from wtransform.activations import Activation
from wtransform.algebra import expand_power, expand_product
from wtransform.exceptions import LimitError, UnsupportedProductError
from wtransform.models import Expression, LinearArgTerm, MonomialTerm, RbfTerm, TrigTerm
from wtransform.parser import parse


def _sin(dimension, d, k=1):
    freqs = tuple(k if i == d else 0 for i in range(dimension))
    phases = tuple(-math.pi / 2 if i == d else 0.0 for i in range(dimension))
    return Expression.build(dimension, [TrigTerm(1.0, freqs, phases)])


def _cos(dimension, d, k=1):
    freqs = tuple(k if i == d else 0 for i in range(dimension))
    return Expression.build(dimension, [TrigTerm(1.0, freqs, (0.0,) * dimension)])


def test_monomial_product_adds_exponents():
    x = Expression.variable(2, 1)
    y = Expression.variable(2, 2)
    assert expand_product(x, y).terms == (MonomialTerm(1.0, (1, 1)),)


def test_square_of_binomial():
    e = Expression.variable(1, 1) + Expression.constant(1, 1.0)
    squared = expand_power(e, 2)
    assert squared.terms == (
        MonomialTerm(1.0, (0,)),
        MonomialTerm(2.0, (1,)),
        MonomialTerm(1.0, (2,)),
    )


def test_sine_squared_is_half_minus_half_cosine():
    squared = expand_power(_sin(1, 0), 2)
    expected = Expression.build(1, [MonomialTerm(0.5, (0,)), TrigTerm(-0.5, (2,), (0.0,))])
    assert squared.is_close(expected, rel_tol=1e-15, abs_tol=1e-15)


def test_cosine_squared_is_half_plus_half_cosine():
    squared = expand_power(_cos(1, 0), 2)
    expected = Expression.build(1, [MonomialTerm(0.5, (0,)), TrigTerm(0.5, (2,), (0.0,))])
    assert squared.is_close(expected, rel_tol=1e-15, abs_tol=1e-15)


def test_products_on_separate_variables_stay_single_terms():
    product = expand_product(_cos(2, 0), _sin(2, 1))
    (term,) = product.terms
    assert term.freqs == (1, 1)
    assert term.phases == (0.0, math.pi / 2)


def test_monomial_times_harmonic_in_another_variable():
    product = expand_product(Expression.variable(2, 2), _cos(2, 0))
    (term,) = product.terms
    assert isinstance(term, TrigTerm)
    assert term.exponents == (0, 1)


def test_monomial_times_harmonic_in_same_variable_is_rejected():
    with pytest.raises(UnsupportedProductError):
        expand_product(Expression.variable(1, 1), _cos(1, 0))


@pytest.mark.parametrize("term", [
    RbfTerm(1.0, (0.0,), 1.0),
    LinearArgTerm(1.0, Activation.RELU, (1.0,)),
])
def test_opaque_families_only_take_scalars(term):
    e = Expression.build(1, [term])
    scaled = expand_product(Expression.constant(1, -2.0), e)
    assert scaled.terms[0].coeff == -2.0
    with pytest.raises(UnsupportedProductError):
        expand_product(e, Expression.variable(1, 1))
    with pytest.raises(UnsupportedProductError):
        expand_product(e, e)


def test_power_limits():
    e = Expression.variable(1, 1)
    assert expand_power(e, 0) == Expression.constant(1, 1.0)
    assert expand_power(e, 8).terms == (MonomialTerm(1.0, (8,)),)
    with pytest.raises(LimitError):
        expand_power(e, 9)


def test_product_size_limit():
    n = 20
    linear = Expression.build(n, [MonomialTerm(1.0, tuple(int(i == d) for i in range(n))) for d in range(n)])
    cubic = expand_power(linear, 3)
    assert len(cubic.terms) == 1540
    with pytest.raises(LimitError):
        expand_product(cubic, linear)


def test_harmonic_product_size_limit():
    n = 14
    everywhere = Expression.build(n, [TrigTerm(1.0, (1,) * n, (0.0,) * n)])
    with pytest.raises(LimitError):
        expand_product(everywhere, everywhere)


def test_trig_example_expands_correctly(rng):
    """The expanded square agrees with the square of the unexpanded form pointwise."""
    base = (
        _cos(2, 0).scaled(2.0) - _sin(2, 1).scaled(3.0)
        + expand_product(_cos(2, 0), _sin(2, 1)).scaled(4.0)
        - expand_product(_sin(2, 0), _cos(2, 1)).scaled(8.0)
        + Expression.constant(2, 4.0)
    )
    squared = expand_power(base, 2)
    assert all(isinstance(t, (TrigTerm, MonomialTerm)) for t in squared.terms)
    for x in rng.uniform(-3, 3, size=(20, 2)):
        direct = (
            2 * np.cos(x[0]) - 3 * np.sin(x[1]) + 4 * np.cos(x[0]) * np.sin(x[1])
            - 8 * np.sin(x[0]) * np.cos(x[1]) + 4
        ) ** 2
        assert squared.evaluate(x) == pytest.approx(direct, rel=1e-12, abs=1e-11)


def test_parsed_and_built_products_agree():
    assert parse("(x1 + x2)^2").terms == expand_power(Expression.variable(2, 1) + Expression.variable(2, 2), 2).terms
