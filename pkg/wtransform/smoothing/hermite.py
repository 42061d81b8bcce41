"""
Gaussian moments E[(x + sigma Z)^p] through the recurrence

    u_0 = 1, u_1 = x, u_p = x u_{p-1} + (p - 1) sigma^2 u_{p-2}

These are the probabilists' Hermite polynomials with the sign of the
sigma^2 term flipped, so every coefficient is a positive integer.
"""
from functools import lru_cache
from typing import Dict, List, NamedTuple, Tuple

from ..config import get_config
from ..exceptions import LimitError
from ..models import Expression, MonomialTerm, canonicalize


class SigmaMonomial(NamedTuple):
    x_power: int
    sigma_power: int
    coeff: int


class SigmaPolynomial(NamedTuple):
    """u(x, p, sigma) with exact integer coefficients, highest sigma power first."""

    degree: int
    terms: Tuple[SigmaMonomial, ...]

    def evaluate(self, x: float, sigma: float) -> float:
        return sum(float(t.coeff) * x ** t.x_power * sigma ** t.sigma_power for t in self.terms)

    def render(self) -> str:
        parts = []
        for t in self.terms:
            factors = []
            if t.sigma_power:
                factors.append("σ" if t.sigma_power == 1 else f"σ^{t.sigma_power}")
            if t.x_power:
                factors.append("x" if t.x_power == 1 else f"x^{t.x_power}")
            body = " ".join(factors)
            if t.coeff != 1 or not body:
                body = f"{t.coeff}{body}" if body else str(t.coeff)
            parts.append(body)
        return " + ".join(parts)


@lru_cache(maxsize=1024)
def moment_coefficients(p: int, sigma: float) -> Tuple[float, ...]:
    """Coefficients c_q with E[(x + sigma Z)^p] = sum_q c_q x^q."""
    if p < 0:
        raise ValueError(f"degree must be nonnegative, got {p}")
    s2 = sigma * sigma
    previous, current = (1.0,), (0.0, 1.0)
    if p == 0:
        return previous
    for k in range(2, p + 1):
        nxt = [0.0] * (k + 1)
        for q, c in enumerate(current):
            nxt[q + 1] += c
        for q, c in enumerate(previous):
            nxt[q] += (k - 1) * s2 * c
        previous, current = current, tuple(nxt)
    return current


def smooth_monomial(p: int, sigma: float) -> Expression:
    """The univariate expression u(x, p, sigma)."""
    terms = [MonomialTerm(c, (q,)) for q, c in enumerate(moment_coefficients(p, float(sigma)))]
    return canonicalize(Expression(1, tuple(terms)))


def _integer_rows(p_max: int) -> List[Dict[Tuple[int, int], int]]:
    rows = [{(0, 0): 1}]
    if p_max >= 1:
        rows.append({(1, 0): 1})
    for p in range(2, p_max + 1):
        row: Dict[Tuple[int, int], int] = {}
        for (a, b), c in rows[p - 1].items():
            row[(a + 1, b)] = row.get((a + 1, b), 0) + c
        for (a, b), c in rows[p - 2].items():
            row[(a, b + 2)] = row.get((a, b + 2), 0) + (p - 1) * c
        rows.append(row)
    return rows


def monomial_table(p_max: int, limit: int = None) -> List[SigmaPolynomial]:
    """u(x, p, sigma) for p = 0..p_max with exact integer coefficients."""
    if limit is None:
        limit = get_config().TABLE_MAX_DEGREE
    if p_max < 0:
        raise LimitError(f"p_max must be nonnegative, got {p_max}")
    if p_max > limit:
        raise LimitError(f"p_max {p_max} exceeds the table limit of {limit}")
    table = []
    for p, row in enumerate(_integer_rows(p_max)):
        terms = tuple(SigmaMonomial(a, b, c) for (a, b), c in sorted(row.items(), key=lambda item: -item[0][1]))
        table.append(SigmaPolynomial(p, terms))
    return table
