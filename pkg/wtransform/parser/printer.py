"""
Canonical text rendering that parses back to the same expression.
"""
from typing import List, Optional, Sequence, Tuple

from ..activations import Activation
from ..models import Expression, LinearArgTerm, MonomialTerm, RbfTerm, Term, TrigTerm, canonicalize
from ..models.terms import HALF_PI


def format_number(value: float, precision: Optional[int] = None) -> str:
    """Integral values print without a fraction; others use repr unless a precision is given."""
    value = float(value)
    if value.is_integer() and abs(value) < 1e15:
        return str(int(value))
    if precision is None:
        return repr(value)
    return f"{value:.{precision}g}"


def _powers(exponents: Sequence[int]) -> List[str]:
    factors = []
    for d, p in enumerate(exponents):
        if p == 1:
            factors.append(f"x{d + 1}")
        elif p > 1:
            factors.append(f"x{d + 1}^{p}")
    return factors


def _product(magnitude: float, factors: List[str], precision: Optional[int]) -> str:
    if not factors:
        return format_number(magnitude, precision)
    if magnitude == 1.0:
        return "*".join(factors)
    return "*".join([format_number(magnitude, precision)] + factors)


def _linear(direction: Sequence[float], precision: Optional[int]) -> str:
    parts = []
    for d, w in enumerate(direction):
        if w == 0.0:
            continue
        body = f"x{d + 1}" if abs(w) == 1.0 else f"{format_number(abs(w), precision)}*x{d + 1}"
        if not parts:
            parts.append(f"-{body}" if w < 0 else body)
        else:
            parts.append(f" - {body}" if w < 0 else f" + {body}")
    return "".join(parts) or "0*x1"


def _render_term(term: Term, precision: Optional[int]) -> Tuple[bool, str]:
    """Returns (negative, body) with the sign pulled out of the body."""
    match term:
        case MonomialTerm():
            return term.coeff < 0, _product(abs(term.coeff), _powers(term.exponents), precision)
        case RbfTerm():
            center = ", ".join(format_number(c, precision) for c in term.center)
            body = (
                f"rbf(amp={format_number(abs(term.amp), precision)}, center=[{center}], "
                f"width={format_number(term.width, precision)})"
            )
            return term.amp < 0, body
        case TrigTerm():
            factors = []
            if term.damping > 0.0:
                factors.append(f"exp(-{format_number(term.damping, precision)})")
            factors.extend(_powers(term.exponents))
            flips = 0
            for d, (k, phase) in enumerate(zip(term.freqs, term.phases)):
                if k == 0:
                    continue
                arg = f"x{d + 1}" if k == 1 else f"{k}*x{d + 1}"
                if phase == HALF_PI:
                    # cos(t + pi/2) = -sin(t)
                    flips += 1
                    factors.append(f"sin({arg})")
                elif phase == 0.0:
                    factors.append(f"cos({arg})")
                else:
                    factors.append(f"cos({arg} + {format_number(phase, precision)})")
            negative = (term.coeff < 0) != (flips % 2 == 1)
            return negative, _product(abs(term.coeff), factors, precision)
        case LinearArgTerm():
            suffix = ""
            if term.smoothed_sigma > 0.0 or term.activation is Activation.SIN:
                suffix = f"; sigma={format_number(term.smoothed_sigma, precision)}"
            call = f"{term.activation.value}({_linear(term.direction, precision)}{suffix})"
            return term.coeff < 0, _product(abs(term.coeff), [call], precision)
    raise TypeError(f"cannot print {term!r}")


def _highest_variable(term: Term) -> int:
    """1-based index of the last variable the rendered term mentions (0 if none)."""
    match term:
        case RbfTerm():
            return term.dimension
        case LinearArgTerm():
            used = [d + 1 for d, w in enumerate(term.direction) if w != 0.0]
        case TrigTerm():
            used = [d + 1 for d, (k, e) in enumerate(zip(term.freqs, term.exponents)) if k != 0 or e != 0]
        case _:
            used = [d + 1 for d, e in enumerate(term.exponents) if e != 0]
    return max(used, default=1 if isinstance(term, LinearArgTerm) else 0)


def print_expression(expression: Expression, precision: Optional[int] = None) -> str:
    """
    Deterministic rendering of the canonical form; with the default full
    precision, parse(print_expression(e)) reproduces canonicalize(e).
    A trailing "0*xn" keeps the dimension when xn appears in no term.
    """
    expression = canonicalize(expression)
    n = expression.dimension
    if not expression.terms:
        return "0" if n == 1 else f"0*x{n}"
    parts = []
    for i, term in enumerate(expression.terms):
        negative, body = _render_term(term, precision)
        if i == 0:
            parts.append(f"-{body}" if negative else body)
        else:
            parts.append(f" - {body}" if negative else f" + {body}")
    if max(_highest_variable(term) for term in expression.terms) < n:
        parts.append(f" + 0*x{n}")
    return "".join(parts)
