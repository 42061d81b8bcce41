import json
from pathlib import Path

import pytest

from wtransform.exceptions import LimitError
from wtransform.models import Expression, MonomialTerm
from wtransform.smoothing import monomial_table, smooth_monomial

FIXTURES = Path(__file__).parent / "fixtures"


def test_table_matches_published_rows():
    expected = json.loads((FIXTURES / "expected_json" / "monomial_table.json").read_text(encoding="utf-8"))
    table = monomial_table(10)
    assert len(table) == 11
    for row, want in zip(table, expected):
        assert row.degree == want["p"]
        assert [list(t) for t in row.terms] == want["terms"]
        assert row.render() == want["text"]


def test_table_rows_have_positive_integer_coefficients_and_even_sigma_powers():
    for row in monomial_table(30):
        for term in row.terms:
            assert isinstance(term.coeff, int) and term.coeff > 0
            assert term.sigma_power % 2 == 0
            assert term.x_power + term.sigma_power == row.degree


def test_large_degree_stays_exact():
    row = monomial_table(64)[64]
    # sigma^64 carries 63!!
    double_factorial = 1
    for k in range(1, 64, 2):
        double_factorial *= k
    assert row.terms[0] == (0, 64, double_factorial)


def test_table_limit():
    with pytest.raises(LimitError):
        monomial_table(65)
    with pytest.raises(LimitError):
        monomial_table(-1)


def test_smooth_monomial_rows():
    assert smooth_monomial(0, 0.7) == Expression.build(1, [MonomialTerm(1.0, (0,))])
    assert smooth_monomial(1, 0.7) == Expression.build(1, [MonomialTerm(1.0, (1,))])
    assert smooth_monomial(2, 1.0) == Expression.build(1, [MonomialTerm(1.0, (0,)), MonomialTerm(1.0, (2,))])
    assert smooth_monomial(4, 1.0).evaluate((1.0,)) == 10.0


def test_smooth_monomial_matches_table(rng):
    table = monomial_table(12)
    for _ in range(20):
        p = int(rng.integers(0, 13))
        sigma, x = float(rng.uniform(0.1, 2.0)), float(rng.uniform(-2.0, 2.0))
        assert smooth_monomial(p, sigma).evaluate((x,)) == pytest.approx(table[p].evaluate(x, sigma), rel=1e-12)


def test_sigma_zero_is_identity():
    assert smooth_monomial(5, 0.0) == Expression.build(1, [MonomialTerm(1.0, (5,))])
