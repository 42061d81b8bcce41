import math
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

from ..exceptions import ExpressionError
from .terms import RbfTerm


@dataclass(frozen=True)
class GaussianKernel:
    """The isotropic density k_sigma on R^dimension."""

    sigma: float
    dimension: int = 1

    def __post_init__(self):
        if not math.isfinite(self.sigma) or self.sigma <= 0.0:
            raise ExpressionError(f"kernel sigma must be positive, got {self.sigma}")
        if self.dimension < 1:
            raise ExpressionError(f"kernel dimension must be positive, got {self.dimension}")

    @property
    def variance(self) -> float:
        return self.sigma * self.sigma


@dataclass(frozen=True)
class ScaledGaussian:
    """prefactor * k(x - mean; variance), a kernel parameterized by its variance."""

    prefactor: float
    mean: Tuple[float, ...]
    variance: float

    def __post_init__(self):
        object.__setattr__(self, "mean", tuple(float(m) for m in self.mean))
        if not self.mean:
            raise ExpressionError("a Gaussian mean needs at least one coordinate")
        if not math.isfinite(self.variance) or self.variance <= 0.0:
            raise ExpressionError(f"variance must be positive, got {self.variance}")

    @property
    def dimension(self) -> int:
        return len(self.mean)

    @classmethod
    def from_kernel(
        cls, kernel: GaussianKernel, mean: Optional[Sequence[float]] = None, prefactor: float = 1.0
    ) -> "ScaledGaussian":
        if mean is None:
            mean = (0.0,) * kernel.dimension
        return cls(prefactor, tuple(mean), kernel.variance)

    @classmethod
    def from_rbf(cls, term: RbfTerm) -> "ScaledGaussian":
        """amp * exp(-|x - c|^2 / 2 width^2) rewritten as a scaled kernel."""
        variance = term.width ** 2
        prefactor = term.amp * (2.0 * math.pi * variance) ** (term.dimension / 2.0)
        return cls(prefactor, term.center, variance)
