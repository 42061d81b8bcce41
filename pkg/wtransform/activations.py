"""
Univariate activations f(y) together with their Gaussian-smoothed forms
f~(y; s) = [f * k_s](y). A linear-argument term evaluates
coeff * f~(w . x; s * |w|), with f~(.; 0) = f.
"""
import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Dict

import numpy as np
from scipy.special import erf

from .exceptions import FamilyError

SQRT2 = math.sqrt(2.0)
SQRT_2PI = math.sqrt(2.0 * math.pi)


class Activation(str, Enum):
    SIGN = "sign"
    RELU = "relu"
    SIN = "sin"


@dataclass(frozen=True)
class SmoothedActivation:
    activation: Activation
    raw: Callable[[np.ndarray], np.ndarray]
    raw_derivative: Callable[[np.ndarray], np.ndarray]
    smoothed: Callable[[np.ndarray, float], np.ndarray]
    smoothed_derivative: Callable[[np.ndarray, float], np.ndarray]
    kinked: bool

    def value(self, y: np.ndarray, s: float) -> np.ndarray:
        if s == 0.0:
            return self.raw(y)
        return self.smoothed(y, s)

    def derivative(self, y: np.ndarray, s: float) -> np.ndarray:
        if s == 0.0:
            return self.raw_derivative(y)
        return self.smoothed_derivative(y, s)


def _sign(y):
    # sign(0) = 0, the midpoint of the jump
    return np.sign(y)


def _sign_derivative(y):
    return np.zeros_like(y)


def _sign_smoothed(y, s):
    return erf(y / (SQRT2 * s))


def _sign_smoothed_derivative(y, s):
    return math.sqrt(2.0 / math.pi) / s * np.exp(-y * y / (2.0 * s * s))


def _relu(y):
    return np.maximum(y, 0.0)


def _relu_derivative(y):
    return np.where(y > 0.0, 1.0, np.where(y < 0.0, 0.0, 0.5))


def _relu_smoothed(y, s):
    return s / SQRT_2PI * np.exp(-y * y / (2.0 * s * s)) + 0.5 * y * (1.0 + erf(y / (SQRT2 * s)))


def _relu_smoothed_derivative(y, s):
    # the Gaussian term's derivative cancels against part of the erf term's
    return 0.5 * (1.0 + erf(y / (SQRT2 * s)))


def _sin_smoothed(y, s):
    return math.exp(-0.5 * s * s) * np.sin(y)


def _sin_smoothed_derivative(y, s):
    return math.exp(-0.5 * s * s) * np.cos(y)


REGISTRY: Dict[Activation, SmoothedActivation] = {
    Activation.SIGN: SmoothedActivation(
        Activation.SIGN, _sign, _sign_derivative, _sign_smoothed, _sign_smoothed_derivative, kinked=True
    ),
    Activation.RELU: SmoothedActivation(
        Activation.RELU, _relu, _relu_derivative, _relu_smoothed, _relu_smoothed_derivative, kinked=True
    ),
    Activation.SIN: SmoothedActivation(
        Activation.SIN, np.sin, np.cos, _sin_smoothed, _sin_smoothed_derivative, kinked=False
    ),
}


def get_activation(activation) -> SmoothedActivation:
    """Access a registered activation by enum member or name."""
    try:
        return REGISTRY[Activation(activation)]
    except (ValueError, KeyError):
        raise FamilyError(f"Unsupported activation: {activation}") from None
