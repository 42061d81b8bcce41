import logging
import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from ..activations import get_activation
from ..config import get_config
from ..exceptions import LimitError, OracleError
from ..models import EvalPoint, Expression, LinearArgTerm, as_point
from .quadrature import legendre_rule, normal_rule, tensor_normal_rule

logger = logging.getLogger(__name__)

# the standard normal density is below 1e-31 beyond this many deviations
TAIL_CUTOFF = 12.0
MC_CHUNK = 100_000


@dataclass(frozen=True)
class OracleConfig:
    quadrature_nodes: int = 64
    nonsmooth_nodes: int = 200
    mc_samples: int = 1_000_000
    mc_seed: int = 42
    max_quadrature_dim: int = 3

    def __post_init__(self):
        if self.quadrature_nodes < 2 or self.nonsmooth_nodes < 2:
            raise ValueError("quadrature needs at least 2 nodes")
        if self.mc_samples < 1_000:
            raise ValueError(f"mc_samples must be at least 1000, got {self.mc_samples}")
        if not 0 <= self.mc_seed < 2 ** 64:
            raise ValueError(f"mc_seed must be an unsigned 64-bit integer, got {self.mc_seed}")
        if self.max_quadrature_dim < 1:
            raise ValueError("max_quadrature_dim must be positive")

    @classmethod
    def from_config(cls, config=None) -> "OracleConfig":
        config = config or get_config()
        return cls(
            quadrature_nodes=config.QUADRATURE_NODES,
            nonsmooth_nodes=config.NONSMOOTH_NODES,
            mc_samples=config.MC_SAMPLES,
            mc_seed=config.MC_SEED,
            max_quadrature_dim=config.MAX_QUADRATURE_DIM,
        )


def _along_line(term) -> bool:
    # steep erf transitions defeat Gauss-Hermite as badly as a true kink
    return isinstance(term, LinearArgTerm) and get_activation(term.activation).kinked and term.norm > 0.0


class OracleEstimate(NamedTuple):
    value: float
    error_estimate: float


class ConvolutionOracle:
    """
    Numerical E[f(p + sigma Z)] for an expression f, independent of the
    closed forms. Sign/Relu terms, raw or already smoothed, are integrated
    along their direction with a rule split at the kink; everything else
    uses tensor Gauss-Hermite up to max_quadrature_dim and seeded Monte
    Carlo beyond.
    """

    def __init__(self, config: Optional[OracleConfig] = None) -> None:
        self.config = config or OracleConfig.from_config()

    # ---------- public ----------

    def convolve(self, expression: Expression, sigma: float, point: EvalPoint) -> OracleEstimate:
        sigma = float(sigma)
        if not math.isfinite(sigma) or sigma <= 0.0:
            raise OracleError(f"oracle needs sigma > 0, got {sigma}")
        try:
            x = as_point(point, expression.dimension)
        except ValueError as exc:
            raise OracleError(str(exc)) from exc

        kinked = [t for t in expression.terms if _along_line(t)]
        rest = Expression(expression.dimension, tuple(t for t in expression.terms if t not in kinked))
        logger.debug(f"{len(kinked)} terms along lines, {len(rest.terms)} on the n-dimensional rule")

        value, error = 0.0, 0.0
        if rest.terms:
            if expression.dimension <= self.config.max_quadrature_dim:
                nodes = self.config.quadrature_nodes
                fine = self._gauss_hermite(rest, sigma, x, nodes)
                coarse = self._gauss_hermite(rest, sigma, x, max(nodes // 2, 1))
                value, error = fine, abs(fine - coarse)
            else:
                value, error = self._monte_carlo(rest, sigma, x)
        for term in kinked:
            nodes = self.config.nonsmooth_nodes
            fine = self._kinked_line(term, sigma, x, nodes)
            coarse = self._kinked_line(term, sigma, x, max(nodes // 2, 1))
            value += fine
            error += abs(fine - coarse)
        return OracleEstimate(value, error)

    def moment(self, p: int, x: float, sigma: float) -> float:
        """E[(x + sigma Z)^p] by Gauss-Hermite with enough nodes to be exact."""
        limit = get_config().TABLE_MAX_DEGREE
        if p < 0 or p > limit:
            raise LimitError(f"moment degree must be in 0..{limit}, got {p}")
        if not math.isfinite(sigma) or sigma <= 0.0:
            raise OracleError(f"oracle needs sigma > 0, got {sigma}")
        nodes, weights = normal_rule(max(self.config.quadrature_nodes, math.ceil((p + 1) / 2)))
        return float(np.sum(weights * (x + sigma * nodes) ** p))

    # ---------- quadrature ----------

    @staticmethod
    def _checked(values: np.ndarray) -> np.ndarray:
        if not np.all(np.isfinite(values)):
            raise OracleError("integrand produced nonfinite samples")
        return values

    def _gauss_hermite(self, expression: Expression, sigma: float, x: np.ndarray, n_nodes: int) -> float:
        nodes, weights = tensor_normal_rule(n_nodes, expression.dimension)
        values = self._checked(expression.evaluate_many(x + sigma * nodes))
        return float(np.sum(weights * values))

    def _kinked_line(self, term: LinearArgTerm, sigma: float, x: np.ndarray, n_nodes: int) -> float:
        """
        w . (x + sigma Z) is N(mu, s^2) with mu = w . x and s = sigma |w|, so the
        term reduces to a 1-D integral over t with the kink at t* = -mu / s.
        """
        mu = float(np.dot(term.direction, x))
        s = sigma * term.norm
        kink = -mu / s
        if -TAIL_CUTOFF < kink < TAIL_CUTOFF:
            pieces = [(-TAIL_CUTOFF, kink), (kink, TAIL_CUTOFF)]
        else:
            pieces = [(-TAIL_CUTOFF, TAIL_CUTOFF)]
        unit_nodes, unit_weights = legendre_rule(n_nodes)
        activation = get_activation(term.activation)
        samples, weights = [], []
        for lo, hi in pieces:
            half = 0.5 * (hi - lo)
            t = half * unit_nodes + 0.5 * (lo + hi)
            samples.append(activation.value(mu + s * t, term.effective_sigma) * np.exp(-0.5 * t * t))
            weights.append(half * unit_weights)
        values = self._checked(np.concatenate(samples))
        return term.coeff * float(np.sum(np.concatenate(weights) * values)) / math.sqrt(2.0 * math.pi)

    # ---------- monte carlo ----------

    def _monte_carlo(self, expression: Expression, sigma: float, x: np.ndarray) -> OracleEstimate:
        rng = np.random.default_rng(self.config.mc_seed)
        total = self.config.mc_samples
        sums, squares = [], []
        remaining = total
        while remaining > 0:
            size = min(MC_CHUNK, remaining)
            z = rng.standard_normal((size, expression.dimension))
            values = self._checked(expression.evaluate_many(x + sigma * z))
            sums.append(np.sum(values))
            squares.append(np.sum(values * values))
            remaining -= size
        mean = math.fsum(sums) / total
        variance = max(math.fsum(squares) / total - mean * mean, 0.0) * total / (total - 1)
        logger.debug(f"Monte Carlo over {total} samples in dimension {expression.dimension}")
        return OracleEstimate(mean, math.sqrt(variance / total))


def oracle_convolve(
    expression: Expression, sigma: float, point: EvalPoint, config: Optional[OracleConfig] = None
) -> OracleEstimate:
    return ConvolutionOracle(config).convolve(expression, sigma, point)


def oracle_moment(p: int, x: float, sigma: float, config: Optional[OracleConfig] = None) -> float:
    return ConvolutionOracle(config).moment(p, x, sigma)
