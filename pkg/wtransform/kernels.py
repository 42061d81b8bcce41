"""
Gaussian kernel algebra: evaluation, the product identity and the
convolution of a kernel with an affine argument against k_sigma.
"""
import math
from typing import Sequence

import numpy as np

from .exceptions import DimensionError, ExpressionError
from .models import GaussianKernel, ScaledGaussian


def kernel_eval(kernel: GaussianKernel, x: Sequence[float]) -> float:
    """(2 pi sigma^2)^(-n/2) exp(-|x|^2 / 2 sigma^2)."""
    x = np.asarray(x, dtype=float).reshape(-1)
    if x.shape[0] != kernel.dimension:
        raise DimensionError(f"point has {x.shape[0]} coordinates, kernel has dimension {kernel.dimension}")
    norm = (2.0 * math.pi * kernel.variance) ** (-kernel.dimension / 2.0)
    return float(norm * math.exp(-float(np.dot(x, x)) / (2.0 * kernel.variance)))


def scaled_gaussian_eval(gaussian: ScaledGaussian, x: Sequence[float]) -> float:
    offset = np.asarray(x, dtype=float).reshape(-1) - np.asarray(gaussian.mean)
    kernel = GaussianKernel(math.sqrt(gaussian.variance), gaussian.dimension)
    return gaussian.prefactor * kernel_eval(kernel, offset)


def gaussian_product(left: ScaledGaussian, right: ScaledGaussian) -> ScaledGaussian:
    """
    k(x - mu1; s1) k(x - mu2; s2) = k(mu1 - mu2; s1 + s2) k(x - mu; s),
    mu = (s2 mu1 + s1 mu2) / (s1 + s2), s = s1 s2 / (s1 + s2).
    """
    if left.dimension != right.dimension:
        raise DimensionError(f"cannot multiply Gaussians of dimension {left.dimension} and {right.dimension}")
    s1, s2 = left.variance, right.variance
    total = s1 + s2
    mu1, mu2 = np.asarray(left.mean), np.asarray(right.mean)
    mean = (s2 * mu1 + s1 * mu2) / total
    overlap = kernel_eval(GaussianKernel(math.sqrt(total), left.dimension), mu1 - mu2)
    return ScaledGaussian(left.prefactor * right.prefactor * overlap, tuple(mean), s1 * s2 / total)


def affine_kernel_convolve(delta: float, a: float, b: float, sigma: float) -> float:
    """
    Width of the kernel that k_delta(a x + b) becomes after convolving with
    k_sigma: sqrt(delta^2 + a^2 sigma^2). `b` only shifts the argument.
    """
    for name, value in (("delta", delta), ("a", a), ("b", b), ("sigma", sigma)):
        if not math.isfinite(value):
            raise ExpressionError(f"{name} must be finite, got {value}")
    if delta <= 0.0 or sigma <= 0.0:
        raise ExpressionError(f"delta and sigma must be positive, got {delta} and {sigma}")
    return math.hypot(delta, a * sigma)


def affine_kernel_value(delta: float, a: float, b: float, sigma: float, x: float) -> float:
    """[k_delta(a . + b) * k_sigma](x) in closed form for a univariate kernel."""
    width = affine_kernel_convolve(delta, a, b, sigma)
    return kernel_eval(GaussianKernel(width), [a * x + b])
