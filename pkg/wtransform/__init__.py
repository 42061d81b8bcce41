"""
Closed-form Gaussian smoothing (the Weierstrass transform) of polynomial,
RBF, trigonometric and linear-argument expressions, with a numerical
oracle, a text front end and a graduated-optimization solver.
"""
from .algebra import expand_power, expand_product
from .models import Expression, canonicalize
from .parser import parse, print_expression
from .smoothing import gradient, smooth

__all__ = [
    "expand_power", "expand_product", "Expression", "canonicalize",
    "parse", "print_expression", "gradient", "smooth",
]
