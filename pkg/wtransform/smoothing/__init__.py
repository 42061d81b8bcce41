from .hermite import SigmaMonomial, SigmaPolynomial, moment_coefficients, monomial_table, smooth_monomial
from .transform import (
    check_sigma,
    gradient,
    smooth,
    smooth_linear_arg,
    smooth_polynomial,
    smooth_rbf,
    smooth_trig,
)

__all__ = [
    "SigmaMonomial", "SigmaPolynomial", "moment_coefficients", "monomial_table", "smooth_monomial",
    "check_sigma", "gradient", "smooth", "smooth_linear_arg", "smooth_polynomial", "smooth_rbf", "smooth_trig",
]
