import json

import pytest
from marshmallow import ValidationError

from wtransform.activations import Activation
from wtransform.homotopy import minimize_homotopy
from wtransform.models import Expression, LinearArgTerm, Schedule
from wtransform.parser import parse
from wtransform.schemas import ExpressionSchema, SigmaPolynomialSchema, SolveReportSchema
from wtransform.smoothing import monomial_table


def test_expression_document_loads_back(random_expression):
    schema = ExpressionSchema()
    for _ in range(50):
        e = random_expression(dimension=3, n_terms=5)
        assert schema.loads(schema.dumps(e)) == e


def test_linear_arg_document():
    e = Expression.build(2, [LinearArgTerm(-1.5, Activation.RELU, (1.0, 2.0), 0.25)])
    (term,) = ExpressionSchema().dump(e)["terms"]
    assert term == {
        "family": "linear_arg",
        "coeff": -1.5,
        "activation": "relu",
        "direction": [1.0, 2.0],
        "smoothed_sigma": 0.25,
    }


def test_trig_defaults_on_load():
    document = {"dimension": 1, "terms": [{"family": "trig", "coeff": 1.0, "freqs": [1], "phases": [0.0]}]}
    e = ExpressionSchema().load(document)
    (term,) = e.terms
    assert term.damping == 0.0
    assert term.exponents == (0,)


@pytest.mark.parametrize("document", [
    {"terms": []},
    {"dimension": 0, "terms": []},
    {"dimension": 1, "terms": [{"family": "monomial", "coeff": 1.0, "exponents": [1.5]}]},
    {"dimension": 1, "terms": [{"family": "monomial", "coeff": 1.0, "exponents": [-1]}]},
    {"dimension": 1, "terms": [{"family": "rbf", "amp": 1.0, "center": [0.0], "width": 0.0}]},
    {"dimension": 1, "terms": [{"family": "linear_arg", "coeff": 1.0, "activation": "tanh", "direction": [1.0]}]},
    {"dimension": 1, "terms": [{"family": "trig", "coeff": 1.0, "freqs": [1], "phases": [0.0, 0.0]}]},
    {"dimension": 2, "terms": [{"family": "monomial", "coeff": 1.0, "exponents": [1]}]},
    {"dimension": 1, "terms": ["x1"]},
])
def test_invalid_documents(document):
    with pytest.raises(ValidationError):
        ExpressionSchema().load(document)


def test_table_rows_dump():
    rows = SigmaPolynomialSchema(many=True).dump(monomial_table(2))
    assert rows[2] == {
        "degree": 2,
        "terms": [{"x_power": 0, "sigma_power": 2, "coeff": 1}, {"x_power": 2, "sigma_power": 0, "coeff": 1}],
        "text": "σ^2 + x^2",
    }


def test_solve_report_dump(config):
    report = minimize_homotopy(parse("x1^2"), Schedule((1.0,)), x0=(2.0,), config=config)
    document = json.loads(SolveReportSchema().dumps(report))
    assert document["converged"] is True
    assert [stage["sigma"] for stage in document["stages"]] == [1.0, 0.0]
    assert document["point"] == [0.0]
    assert document["message"] is None
