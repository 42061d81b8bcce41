"""
The four closed-form term families an expression is built from.

Every term is an immutable value. `evaluate` and `gradient` are vectorized
over an (N, n) array of points; `key` identifies terms that may be merged
by adding coefficients.
"""
import math
from dataclasses import dataclass, replace
from enum import Enum
from typing import ClassVar, Optional, Tuple, Union

import numpy as np

from ..activations import Activation, get_activation
from ..exceptions import ExpressionError

HALF_PI = math.pi / 2.0
SNAP_TOLERANCE = 1e-12
KEY_DIGITS = 12


class Family(str, Enum):
    MONOMIAL = "monomial"
    RBF = "rbf"
    TRIG = "trig"
    LINEAR_ARG = "linear_arg"


FAMILY_RANK = {Family.MONOMIAL: 0, Family.RBF: 1, Family.TRIG: 2, Family.LINEAR_ARG: 3}
ACTIVATION_RANK = {Activation.SIGN: 0, Activation.RELU: 1, Activation.SIN: 2}


def _rounded(value: float) -> float:
    """value to KEY_DIGITS significant digits; + 0.0 folds -0.0 into 0.0."""
    return float(f"{float(value):.{KEY_DIGITS}g}") + 0.0


def _key(values) -> Tuple[float, ...]:
    return tuple(_rounded(v) for v in values)


def _floats(name: str, values) -> Tuple[float, ...]:
    out = tuple(float(v) for v in values)
    if not all(math.isfinite(v) for v in out):
        raise ExpressionError(f"{name} must be finite, got {out}")
    return out


def _finite(name: str, value) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise ExpressionError(f"{name} must be finite, got {value}")
    return value


def _ints(name: str, values, nonnegative: bool = False) -> Tuple[int, ...]:
    out = []
    for v in values:
        if float(v) != int(v):
            raise ExpressionError(f"{name} must be integers, got {v}")
        if nonnegative and int(v) < 0:
            raise ExpressionError(f"{name} must be nonnegative, got {v}")
        out.append(int(v))
    return tuple(out)


def _power_factors(points: np.ndarray, exponents: Tuple[int, ...]):
    """x_d^e_d and its derivative, with the derivative pinned to 0 where e_d == 0."""
    exps = np.asarray(exponents, dtype=int)
    values = points ** exps
    lowered = np.maximum(exps - 1, 0)
    derivatives = np.where(exps > 0, exps * points ** lowered, 0.0)
    return values, derivatives


def _product_rule(factors: np.ndarray, derivatives: np.ndarray) -> np.ndarray:
    grad = np.empty_like(factors)
    for d in range(factors.shape[1]):
        others = np.prod(np.delete(factors, d, axis=1), axis=1)
        grad[:, d] = derivatives[:, d] * others
    return grad


def _reduce_phase(phase: float) -> Tuple[float, bool]:
    """Maps a phase into [0, pi); the flag is set when a sign flip was absorbed."""
    turns = phase / HALF_PI
    nearest = round(turns)
    if abs(turns - nearest) < SNAP_TOLERANCE:
        quarter = nearest % 4
        return HALF_PI * (quarter % 2), quarter >= 2
    phase = math.fmod(phase, 2.0 * math.pi)
    if phase < 0.0:
        phase += 2.0 * math.pi
    if phase >= math.pi:
        return phase - math.pi, True
    return phase, False


def _close(a: Tuple[float, ...], b: Tuple[float, ...], rel_tol: float, abs_tol: float) -> bool:
    return len(a) == len(b) and all(math.isclose(x, y, rel_tol=rel_tol, abs_tol=abs_tol) for x, y in zip(a, b))


@dataclass(frozen=True)
class MonomialTerm:
    coeff: float
    exponents: Tuple[int, ...]

    family: ClassVar[Family] = Family.MONOMIAL

    def __post_init__(self):
        object.__setattr__(self, "coeff", _finite("coeff", self.coeff))
        object.__setattr__(self, "exponents", _ints("exponents", self.exponents, nonnegative=True))
        if not self.exponents:
            raise ExpressionError("a monomial needs at least one variable slot")

    @property
    def dimension(self) -> int:
        return len(self.exponents)

    @property
    def degree(self) -> int:
        return sum(self.exponents)

    def is_constant(self) -> bool:
        return self.degree == 0

    def key(self):
        return self.exponents

    def canonical(self) -> "Term":
        return self

    def with_coeff(self, coeff: float) -> "MonomialTerm":
        return replace(self, coeff=coeff)

    def scaled(self, factor: float) -> "MonomialTerm":
        return replace(self, coeff=self.coeff * factor)

    def is_close(self, other, rel_tol: float, abs_tol: float) -> bool:
        return self.exponents == other.exponents and _close((self.coeff,), (other.coeff,), rel_tol, abs_tol)

    def evaluate(self, points: np.ndarray) -> np.ndarray:
        values, _ = _power_factors(points, self.exponents)
        return self.coeff * np.prod(values, axis=1)

    def gradient(self, points: np.ndarray) -> np.ndarray:
        values, derivatives = _power_factors(points, self.exponents)
        return self.coeff * _product_rule(values, derivatives)


@dataclass(frozen=True)
class RbfTerm:
    amp: float
    center: Tuple[float, ...]
    width: float

    family: ClassVar[Family] = Family.RBF

    def __post_init__(self):
        object.__setattr__(self, "amp", _finite("amp", self.amp))
        object.__setattr__(self, "center", _floats("center", self.center))
        object.__setattr__(self, "width", _finite("width", self.width))
        if not self.center:
            raise ExpressionError("an rbf center needs at least one coordinate")
        if self.width <= 0.0:
            raise ExpressionError(f"rbf width must be positive, got {self.width}")

    @property
    def coeff(self) -> float:
        return self.amp

    @property
    def dimension(self) -> int:
        return len(self.center)

    def key(self):
        return (_key(self.center), _rounded(self.width))

    def canonical(self) -> "Term":
        return self

    def with_coeff(self, coeff: float) -> "RbfTerm":
        return replace(self, amp=coeff)

    def scaled(self, factor: float) -> "RbfTerm":
        return replace(self, amp=self.amp * factor)

    def is_close(self, other, rel_tol: float, abs_tol: float) -> bool:
        return _close(
            (self.amp, self.width) + self.center, (other.amp, other.width) + other.center, rel_tol, abs_tol
        )

    def evaluate(self, points: np.ndarray) -> np.ndarray:
        offsets = points - np.asarray(self.center)
        return self.amp * np.exp(-np.sum(offsets * offsets, axis=1) / (2.0 * self.width ** 2))

    def gradient(self, points: np.ndarray) -> np.ndarray:
        offsets = points - np.asarray(self.center)
        return self.evaluate(points)[:, None] * (-offsets / self.width ** 2)


@dataclass(frozen=True)
class TrigTerm:
    """
    coeff * exp(-damping) * prod_d x_d^e_d * cos(k_d x_d + phi_d).

    Monomial factors only sit on variables whose frequency is 0. In canonical
    form every k_d >= 0, phases lie in [0, pi) and a zero frequency carries a
    zero phase.
    """

    coeff: float
    freqs: Tuple[int, ...]
    phases: Tuple[float, ...]
    damping: float = 0.0
    exponents: Optional[Tuple[int, ...]] = None

    family: ClassVar[Family] = Family.TRIG

    def __post_init__(self):
        object.__setattr__(self, "coeff", _finite("coeff", self.coeff))
        object.__setattr__(self, "freqs", _ints("freqs", self.freqs))
        object.__setattr__(self, "phases", _floats("phases", self.phases))
        object.__setattr__(self, "damping", _finite("damping", self.damping))
        exponents = self.exponents if self.exponents is not None else (0,) * len(self.freqs)
        object.__setattr__(self, "exponents", _ints("exponents", exponents, nonnegative=True))
        if not self.freqs:
            raise ExpressionError("a trig term needs at least one variable slot")
        if not len(self.freqs) == len(self.phases) == len(self.exponents):
            raise ExpressionError("freqs, phases and exponents must have the same length")
        if self.damping < 0.0:
            raise ExpressionError(f"damping must be nonnegative, got {self.damping}")
        for d, (k, e) in enumerate(zip(self.freqs, self.exponents)):
            if k != 0 and e != 0:
                raise ExpressionError(f"x{d + 1} carries both a power and a harmonic")

    @property
    def dimension(self) -> int:
        return len(self.freqs)

    def key(self):
        return (self.exponents, self.freqs, _key(self.phases), _rounded(self.damping))

    def canonical(self) -> "Term":
        coeff = self.coeff
        freqs, phases = [], []
        for k, phase in zip(self.freqs, self.phases):
            if k < 0:
                k, phase = -k, -phase
            reduced, flipped = _reduce_phase(phase)
            if flipped:
                coeff = -coeff
            if k == 0:
                if reduced == HALF_PI:
                    coeff = 0.0
                elif reduced != 0.0:
                    coeff *= math.cos(reduced)
                reduced = 0.0
            freqs.append(k)
            phases.append(reduced)
        if not any(freqs):
            return MonomialTerm(coeff * math.exp(-self.damping), self.exponents)
        return TrigTerm(coeff, tuple(freqs), tuple(phases), self.damping, self.exponents)

    def with_coeff(self, coeff: float) -> "TrigTerm":
        return replace(self, coeff=coeff)

    def scaled(self, factor: float) -> "TrigTerm":
        return replace(self, coeff=self.coeff * factor)

    def is_close(self, other, rel_tol: float, abs_tol: float) -> bool:
        return (
            self.freqs == other.freqs
            and self.exponents == other.exponents
            and _close(
                (self.coeff, self.damping) + self.phases, (other.coeff, other.damping) + other.phases, rel_tol, abs_tol
            )
        )

    def _factors(self, points: np.ndarray):
        powers, power_derivatives = _power_factors(points, self.exponents)
        freqs = np.asarray(self.freqs, dtype=float)
        angles = points * freqs + np.asarray(self.phases)
        cosines = np.cos(angles)
        values = powers * cosines
        derivatives = power_derivatives * cosines - powers * freqs * np.sin(angles)
        return values, derivatives

    def evaluate(self, points: np.ndarray) -> np.ndarray:
        values, _ = self._factors(points)
        return self.coeff * math.exp(-self.damping) * np.prod(values, axis=1)

    def gradient(self, points: np.ndarray) -> np.ndarray:
        values, derivatives = self._factors(points)
        return self.coeff * math.exp(-self.damping) * _product_rule(values, derivatives)


@dataclass(frozen=True)
class LinearArgTerm:
    """coeff * f~(w . x; smoothed_sigma * |w|) for a registered activation f."""

    coeff: float
    activation: Activation
    direction: Tuple[float, ...]
    smoothed_sigma: float = 0.0

    family: ClassVar[Family] = Family.LINEAR_ARG

    def __post_init__(self):
        object.__setattr__(self, "coeff", _finite("coeff", self.coeff))
        object.__setattr__(self, "activation", get_activation(self.activation).activation)
        object.__setattr__(self, "direction", _floats("direction", self.direction))
        object.__setattr__(self, "smoothed_sigma", _finite("smoothed_sigma", self.smoothed_sigma))
        if not self.direction:
            raise ExpressionError("a direction needs at least one coordinate")
        if self.smoothed_sigma < 0.0:
            raise ExpressionError(f"smoothed_sigma must be nonnegative, got {self.smoothed_sigma}")

    @property
    def dimension(self) -> int:
        return len(self.direction)

    @property
    def norm(self) -> float:
        return math.hypot(*self.direction)

    @property
    def effective_sigma(self) -> float:
        return self.smoothed_sigma * self.norm

    def key(self):
        return (ACTIVATION_RANK[self.activation], _key(self.direction), _rounded(self.smoothed_sigma))

    def canonical(self) -> "Term":
        return self

    def with_coeff(self, coeff: float) -> "LinearArgTerm":
        return replace(self, coeff=coeff)

    def scaled(self, factor: float) -> "LinearArgTerm":
        return replace(self, coeff=self.coeff * factor)

    def is_close(self, other, rel_tol: float, abs_tol: float) -> bool:
        return self.activation == other.activation and _close(
            (self.coeff, self.smoothed_sigma) + self.direction,
            (other.coeff, other.smoothed_sigma) + other.direction,
            rel_tol,
            abs_tol,
        )

    def evaluate(self, points: np.ndarray) -> np.ndarray:
        y = points @ np.asarray(self.direction)
        return self.coeff * get_activation(self.activation).value(y, self.effective_sigma)

    def gradient(self, points: np.ndarray) -> np.ndarray:
        y = points @ np.asarray(self.direction)
        slope = get_activation(self.activation).derivative(y, self.effective_sigma)
        return self.coeff * slope[:, None] * np.asarray(self.direction)


Term = Union[MonomialTerm, RbfTerm, TrigTerm, LinearArgTerm]
