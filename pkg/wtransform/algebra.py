"""
Products and integer powers of expressions in closed form.

Products stay inside the monomial and trig families: harmonics on a shared
variable are expanded with cos a cos b = (cos(a - b) + cos(a + b)) / 2.
RBF and linear-argument terms only combine with constants.
"""
import itertools
import logging
from typing import List

from .config import get_config
from .exceptions import DimensionError, LimitError, UnsupportedProductError
from .models import Expression, Family, MonomialTerm, Term, TrigTerm, canonicalize

logger = logging.getLogger(__name__)

_OPAQUE = (Family.RBF, Family.LINEAR_ARG)


def _is_scalar(term: Term) -> bool:
    return isinstance(term, MonomialTerm) and term.is_constant()


def _check_shared_variables(power_term: Term, trig: TrigTerm) -> None:
    for d, (e, k) in enumerate(zip(power_term.exponents, trig.freqs)):
        if e > 0 and k != 0:
            raise UnsupportedProductError(
                f"x{d + 1}^{e} times a harmonic in x{d + 1} has no closed form in the trig family"
            )


def _monomial_times_trig(monomial: MonomialTerm, trig: TrigTerm) -> TrigTerm:
    _check_shared_variables(monomial, trig)
    exponents = tuple(p + q for p, q in zip(monomial.exponents, trig.exponents))
    return TrigTerm(monomial.coeff * trig.coeff, trig.freqs, trig.phases, trig.damping, exponents)


def _trig_times_trig(left: TrigTerm, right: TrigTerm, limit: int) -> List[TrigTerm]:
    _check_shared_variables(left, right)
    _check_shared_variables(right, left)
    choices = []
    shared = 0
    for k1, p1, k2, p2 in zip(left.freqs, left.phases, right.freqs, right.phases):
        if k1 == 0:
            choices.append([(k2, p2)])
        elif k2 == 0:
            choices.append([(k1, p1)])
        else:
            shared += 1
            choices.append([(k1 - k2, p1 - p2), (k1 + k2, p1 + p2)])
    if 2 ** shared > limit:
        raise LimitError(f"product of two harmonics expands into 2^{shared} terms, over the limit of {limit}")
    coeff = left.coeff * right.coeff * 0.5 ** shared
    damping = left.damping + right.damping
    exponents = tuple(p + q for p, q in zip(left.exponents, right.exponents))
    return [
        TrigTerm(coeff, tuple(k for k, _ in combo), tuple(p for _, p in combo), damping, exponents)
        for combo in itertools.product(*choices)
    ]


def _multiply_terms(left: Term, right: Term, limit: int) -> List[Term]:
    if _is_scalar(left):
        return [right.scaled(left.coeff)]
    if _is_scalar(right):
        return [left.scaled(right.coeff)]
    if left.family in _OPAQUE or right.family in _OPAQUE:
        raise UnsupportedProductError(
            f"no closed form for a {left.family.value} x {right.family.value} product"
        )
    match (left, right):
        case (MonomialTerm(), MonomialTerm()):
            exponents = tuple(p + q for p, q in zip(left.exponents, right.exponents))
            return [MonomialTerm(left.coeff * right.coeff, exponents)]
        case (MonomialTerm(), TrigTerm()):
            return [_monomial_times_trig(left, right)]
        case (TrigTerm(), MonomialTerm()):
            return [_monomial_times_trig(right, left)]
        case _:
            return _trig_times_trig(left, right, limit)


def expand_product(left: Expression, right: Expression) -> Expression:
    if left.dimension != right.dimension:
        raise DimensionError(f"cannot multiply expressions of dimension {left.dimension} and {right.dimension}")
    left, right = canonicalize(left), canonicalize(right)
    limit = get_config().MAX_TERMS
    if len(left.terms) * len(right.terms) > limit:
        raise LimitError(
            f"product of {len(left.terms)} and {len(right.terms)} terms exceeds the limit of {limit} terms"
        )
    products: List[Term] = []
    for a in left.terms:
        for b in right.terms:
            products.extend(_multiply_terms(a, b, limit))
            if len(products) > limit:
                raise LimitError(f"product expands into more than {limit} terms")
    return canonicalize(Expression(left.dimension, tuple(products)))


def expand_power(expression: Expression, k: int, limit: int = None) -> Expression:
    """expression ** k for 0 <= k <= limit (MAX_POWER by default)."""
    if limit is None:
        limit = get_config().MAX_POWER
    if k < 0:
        raise LimitError(f"power must be nonnegative, got {k}")
    if k > limit:
        raise LimitError(f"power {k} exceeds the limit of {limit}")
    result = Expression.constant(expression.dimension, 1.0)
    for _ in range(k):
        result = expand_product(result, expression)
    logger.debug(f"Expanded power {k} into {len(result.terms)} terms")
    return result
