import math

import numpy as np
import pytest
from click.testing import CliRunner

from wtransform.activations import Activation
from wtransform.cli import create_cli
from wtransform.config import get_config
from wtransform.models import Expression, LinearArgTerm, MonomialTerm, RbfTerm, TrigTerm
from wtransform.oracle import ConvolutionOracle, OracleConfig


@pytest.fixture(scope='session')
def config():
    """Session-wide testing configuration."""
    return get_config("testing")


@pytest.fixture(scope='session')
def oracle(config):
    return ConvolutionOracle(OracleConfig.from_config(config))


@pytest.fixture(scope='function')
def rng():
    """A freshly seeded generator so every test sees the same draws."""
    return np.random.default_rng(20240917)


@pytest.fixture(scope='session')
def cli():
    return create_cli("testing")


@pytest.fixture(scope='function')
def runner():
    return CliRunner()


def _random_coeff(rng):
    return float(rng.choice([-1, 1]) * rng.uniform(0.1, 3.0))


def _random_term(rng, dimension, families):
    family = families[rng.integers(len(families))]
    if family == "monomial":
        return MonomialTerm(_random_coeff(rng), tuple(int(p) for p in rng.integers(0, 4, size=dimension)))
    if family == "rbf":
        center = tuple(float(c) for c in rng.uniform(-2.0, 2.0, size=dimension))
        return RbfTerm(_random_coeff(rng), center, float(rng.uniform(0.5, 2.0)))
    if family == "trig":
        freqs = tuple(int(k) for k in rng.integers(0, 3, size=dimension))
        if not any(freqs):
            freqs = (1,) + freqs[1:]
        phases = tuple(float(p) if k else 0.0 for k, p in zip(freqs, rng.uniform(0.0, 2 * math.pi, size=dimension)))
        exponents = tuple(int(e) if k == 0 else 0 for k, e in zip(freqs, rng.integers(0, 3, size=dimension)))
        damping = float(rng.choice([0.0, rng.uniform(0.0, 1.0)]))
        return TrigTerm(_random_coeff(rng), freqs, phases, damping, exponents)
    activation = [Activation.SIGN, Activation.RELU, Activation.SIN][rng.integers(3)]
    direction = tuple(float(w) for w in rng.uniform(-2.0, 2.0, size=dimension))
    sigma = float(rng.choice([0.0, rng.uniform(0.1, 1.0)]))
    return LinearArgTerm(_random_coeff(rng), activation, direction, sigma)


@pytest.fixture(scope='function')
def random_expression(rng):
    """Factory for canonical random expressions drawn from the requested families."""
    def make(dimension=2, n_terms=4, families=("monomial", "rbf", "trig", "linear_arg")):
        terms = [_random_term(rng, dimension, list(families)) for _ in range(n_terms)]
        return Expression.build(dimension, terms)
    return make
