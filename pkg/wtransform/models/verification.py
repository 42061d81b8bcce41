from dataclasses import dataclass, field
from typing import List, Tuple


@dataclass(frozen=True)
class VerificationPoint:
    point: Tuple[float, ...]
    closed_form: float
    oracle: float
    error_estimate: float

    @property
    def error(self) -> float:
        return abs(self.closed_form - self.oracle)


@dataclass
class VerificationReport:
    sigma: float
    tol: float
    points: List[VerificationPoint] = field(default_factory=list)

    @property
    def max_error(self) -> float:
        return max((p.error for p in self.points), default=0.0)

    @property
    def passed(self) -> bool:
        return all(p.error <= self.tol for p in self.points)
