"""
Closed-form Weierstrass transform [f * k_sigma](x) per term family.

Every rule maps a canonical expression to a canonical expression, so
smoothing by sigma1 then sigma2 equals smoothing once by hypot(sigma1, sigma2).
"""
import itertools
import logging
import math
from dataclasses import replace
from typing import List

import numpy as np

from ..exceptions import ExpressionError, FamilyError
from ..models import (
    EvalPoint,
    Expression,
    Family,
    LinearArgTerm,
    MonomialTerm,
    RbfTerm,
    Term,
    TrigTerm,
    canonicalize,
)
from .hermite import moment_coefficients

logger = logging.getLogger(__name__)


def check_sigma(sigma) -> float:
    """Returns sigma as a float after checking it is finite and nonnegative."""
    value = float(sigma)
    if not math.isfinite(value) or value < 0.0:
        raise ExpressionError(f"sigma must be a finite nonnegative number, got {sigma}")
    return value


def _smoothed_powers(exponents, sigma: float):
    """Yields (factor, exponents) pairs of the tensor-product moment expansion."""
    per_variable = [
        [(q, c) for q, c in enumerate(moment_coefficients(p, sigma)) if c != 0.0] for p in exponents
    ]
    for combo in itertools.product(*per_variable):
        yield math.prod(c for _, c in combo), tuple(q for q, _ in combo)


def _smooth_monomial_term(term: MonomialTerm, sigma: float) -> List[Term]:
    return [MonomialTerm(term.coeff * factor, exps) for factor, exps in _smoothed_powers(term.exponents, sigma)]


def _smooth_rbf_term(term: RbfTerm, sigma: float) -> RbfTerm:
    width = math.hypot(term.width, sigma)
    return RbfTerm(term.amp * (term.width / width) ** term.dimension, term.center, width)


def _smooth_trig_term(term: TrigTerm, sigma: float) -> List[Term]:
    damping = term.damping + 0.5 * sigma * sigma * sum(k * k for k in term.freqs)
    if not any(term.exponents):
        return [replace(term, damping=damping)]
    return [
        TrigTerm(term.coeff * factor, term.freqs, term.phases, damping, exps)
        for factor, exps in _smoothed_powers(term.exponents, sigma)
    ]


def smooth_linear_arg(term: LinearArgTerm, sigma: float) -> LinearArgTerm:
    sigma = check_sigma(sigma)
    if term.norm == 0.0:
        # f(0) is a constant and stays one
        return term
    return replace(term, smoothed_sigma=math.hypot(term.smoothed_sigma, sigma))


def _smooth_term(term: Term, sigma: float) -> List[Term]:
    match term:
        case MonomialTerm():
            return _smooth_monomial_term(term, sigma)
        case RbfTerm():
            return [_smooth_rbf_term(term, sigma)]
        case TrigTerm():
            return _smooth_trig_term(term, sigma)
        case LinearArgTerm():
            return [smooth_linear_arg(term, sigma)]
    raise FamilyError(f"Unsupported term: {term!r}")


def _smooth_terms(expression: Expression, sigma: float) -> Expression:
    sigma = check_sigma(sigma)
    if sigma == 0.0:
        return canonicalize(expression)
    terms: List[Term] = []
    for term in expression.terms:
        terms.extend(_smooth_term(term, sigma))
    smoothed = canonicalize(Expression(expression.dimension, tuple(terms)))
    logger.debug(f"Smoothed {len(expression.terms)} terms into {len(smoothed.terms)} at sigma={sigma:g}")
    return smoothed


def _require(expression: Expression, allowed, operation: str) -> None:
    for term in expression.terms:
        if term.family in allowed:
            continue
        if Family.TRIG in allowed and isinstance(term, MonomialTerm) and term.is_constant():
            continue
        raise FamilyError(f"{operation} does not accept {term.family.value} terms")


def smooth_polynomial(expression: Expression, sigma: float) -> Expression:
    _require(expression, {Family.MONOMIAL}, "smooth_polynomial")
    return _smooth_terms(expression, sigma)


def smooth_rbf(expression: Expression, sigma: float) -> Expression:
    _require(expression, {Family.RBF}, "smooth_rbf")
    return _smooth_terms(expression, sigma)


def smooth_trig(expression: Expression, sigma: float) -> Expression:
    """Damped harmonics; constants are harmonics with all frequencies 0."""
    _require(expression, {Family.TRIG}, "smooth_trig")
    return _smooth_terms(expression, sigma)


def smooth(expression: Expression, sigma: float) -> Expression:
    return _smooth_terms(expression, sigma)


def gradient(expression: Expression, point: EvalPoint) -> np.ndarray:
    """Analytic gradient of the expression at a point."""
    return expression.gradient(point)
