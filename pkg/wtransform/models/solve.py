import math
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from ..config import get_config
from ..exceptions import ExpressionError


@dataclass(frozen=True)
class Schedule:
    """Strictly decreasing smoothing levels, always ending at 0."""

    sigmas: Tuple[float, ...]

    def __post_init__(self):
        sigmas = tuple(float(s) for s in self.sigmas)
        if not sigmas:
            raise ExpressionError("a schedule needs at least one sigma")
        if not all(math.isfinite(s) and s >= 0.0 for s in sigmas):
            raise ExpressionError(f"schedule sigmas must be finite and nonnegative, got {sigmas}")
        if any(b >= a for a, b in zip(sigmas, sigmas[1:])):
            raise ExpressionError(f"schedule must be strictly decreasing, got {sigmas}")
        if sigmas[-1] != 0.0:
            sigmas += (0.0,)
        object.__setattr__(self, "sigmas", sigmas)

    @classmethod
    def geometric(cls, sigma_max: float = None, sigma_min: float = None, steps: int = None) -> "Schedule":
        config = get_config()
        sigma_max = config.SIGMA_MAX if sigma_max is None else sigma_max
        sigma_min = config.SIGMA_MIN if sigma_min is None else sigma_min
        steps = config.SCHEDULE_STEPS if steps is None else steps
        if steps < 1:
            raise ExpressionError(f"steps must be at least 1, got {steps}")
        if not 0.0 < sigma_min <= sigma_max or (steps > 1 and sigma_min == sigma_max):
            raise ExpressionError(f"need 0 < sigma_min < sigma_max, got {sigma_min} and {sigma_max}")
        return cls(tuple(np.geomspace(sigma_max, sigma_min, steps)) + (0.0,))


@dataclass(frozen=True)
class StageReport:
    sigma: float
    iterations: int
    point: Tuple[float, ...]
    value: float
    gradient_norm: float
    evaluations: int
    converged: bool
    status: str


@dataclass
class SolveReport:
    stages: List[StageReport] = field(default_factory=list)
    converged: bool = False
    evaluations: int = 0
    message: Optional[str] = None
    failed_sigma: Optional[float] = None

    @property
    def point(self) -> Optional[Tuple[float, ...]]:
        return self.stages[-1].point if self.stages else None

    @property
    def value(self) -> Optional[float]:
        return self.stages[-1].value if self.stages else None
