import logging
import math
from dataclasses import dataclass
from typing import Dict, Iterable, List, Sequence, Tuple

import numpy as np

from ..config import get_config
from ..exceptions import DimensionError, ExpressionError
from .terms import FAMILY_RANK, MonomialTerm, Term

logger = logging.getLogger(__name__)

EvalPoint = Sequence[float]


def as_point(point: EvalPoint, dimension: int) -> np.ndarray:
    """Validates a single evaluation point and returns it as a float vector."""
    values = np.asarray(point, dtype=float).reshape(-1)
    if values.shape[0] != dimension:
        raise DimensionError(f"point has {values.shape[0]} coordinates, expression has dimension {dimension}")
    if not np.all(np.isfinite(values)):
        raise ExpressionError(f"point coordinates must be finite, got {tuple(values)}")
    return values


def as_points(points, dimension: int) -> np.ndarray:
    values = np.atleast_2d(np.asarray(points, dtype=float))
    if values.shape[1] != dimension:
        raise DimensionError(f"points have {values.shape[1]} coordinates, expression has dimension {dimension}")
    return values


@dataclass(frozen=True)
class Expression:
    """A finite sum of terms over x in R^dimension."""

    dimension: int
    terms: Tuple[Term, ...] = ()

    def __post_init__(self):
        if int(self.dimension) != self.dimension or self.dimension < 1:
            raise DimensionError(f"dimension must be a positive integer, got {self.dimension}")
        object.__setattr__(self, "dimension", int(self.dimension))
        object.__setattr__(self, "terms", tuple(self.terms))
        for term in self.terms:
            if term.dimension != self.dimension:
                raise DimensionError(
                    f"{term.family.value} term has dimension {term.dimension}, expected {self.dimension}"
                )

    # ---------- construction ----------

    @classmethod
    def build(cls, dimension: int, terms: Iterable[Term]) -> "Expression":
        return canonicalize(cls(dimension, tuple(terms)))

    @classmethod
    def constant(cls, dimension: int, value: float = 1.0) -> "Expression":
        return cls.build(dimension, [MonomialTerm(value, (0,) * dimension)])

    @classmethod
    def variable(cls, dimension: int, index: int) -> "Expression":
        """x_index, numbered from 1."""
        if not 1 <= index <= dimension:
            raise DimensionError(f"x{index} does not exist in dimension {dimension}")
        exponents = tuple(1 if d == index - 1 else 0 for d in range(dimension))
        return cls(dimension, (MonomialTerm(1.0, exponents),))

    # ---------- queries ----------

    def is_zero(self) -> bool:
        return not self.terms

    def is_close(self, other: "Expression", rel_tol: float = 1e-12, abs_tol: float = 1e-12) -> bool:
        """Structural comparison of two canonical expressions with float tolerance."""
        if self.dimension != other.dimension or len(self.terms) != len(other.terms):
            return False
        return all(
            type(a) is type(b) and a.is_close(b, rel_tol, abs_tol) for a, b in zip(self.terms, other.terms)
        )

    # ---------- evaluation ----------

    def evaluate(self, point: EvalPoint) -> float:
        x = as_point(point, self.dimension)[None, :]
        return math.fsum(float(term.evaluate(x)[0]) for term in self.terms)

    def evaluate_many(self, points) -> np.ndarray:
        x = as_points(points, self.dimension)
        total = np.zeros(x.shape[0])
        for term in self.terms:
            total += term.evaluate(x)
        return total

    def gradient(self, point: EvalPoint) -> np.ndarray:
        x = as_point(point, self.dimension)[None, :]
        grad = np.zeros(self.dimension)
        for term in self.terms:
            grad += term.gradient(x)[0]
        return grad

    # ---------- arithmetic ----------

    def scaled(self, factor: float) -> "Expression":
        return canonicalize(Expression(self.dimension, tuple(term.scaled(factor) for term in self.terms)))

    def __add__(self, other: "Expression") -> "Expression":
        return add(self, other)

    def __neg__(self) -> "Expression":
        return self.scaled(-1.0)

    def __sub__(self, other: "Expression") -> "Expression":
        return add(self, -other)


def eval(expression: Expression, point: EvalPoint) -> float:  # noqa: A001
    return expression.evaluate(point)


def add(left: Expression, right: Expression) -> Expression:
    if left.dimension != right.dimension:
        raise DimensionError(f"cannot add expressions of dimension {left.dimension} and {right.dimension}")
    return canonicalize(Expression(left.dimension, left.terms + right.terms))


def canonicalize(expression: Expression, tolerance: float = None) -> Expression:
    """
    Merges like terms, drops near-zero coefficients and sorts by
    (family, key). Applying it twice changes nothing.
    """
    if tolerance is None:
        tolerance = get_config().MERGE_TOLERANCE
    coefficients: Dict[tuple, List[float]] = {}
    prototypes: Dict[tuple, Term] = {}
    for term in expression.terms:
        term = term.canonical()
        key = (FAMILY_RANK[term.family], term.key())
        coefficients.setdefault(key, []).append(term.coeff)
        prototypes.setdefault(key, term)

    terms = []
    for key in sorted(coefficients):
        coeff = math.fsum(coefficients[key])
        if abs(coeff) < tolerance:
            if len(coefficients[key]) > 1:
                logger.debug(f"Cancelled {len(coefficients[key])} like terms with key {key}")
            continue
        terms.append(prototypes[key].with_coeff(coeff))
    return Expression(expression.dimension, tuple(terms))
