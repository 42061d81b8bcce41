from marshmallow import Schema, ValidationError, fields, post_load, validate, validates_schema

from .activations import Activation
from .exceptions import ExpressionError
from .models import Expression, LinearArgTerm, MonomialTerm, RbfTerm, TrigTerm


class _TermSchema(Schema):
    """Builds the term dataclass after loading, reporting invariant violations as validation errors."""

    term_class = None

    @post_load
    def make_term(self, data, **kwargs):
        data.pop("family", None)
        try:
            return self.term_class(**data)
        except ExpressionError as exc:
            raise ValidationError(str(exc)) from exc


class MonomialTermSchema(_TermSchema):
    term_class = MonomialTerm

    family = fields.Constant("monomial")
    coeff = fields.Float(required=True)
    exponents = fields.List(fields.Integer(strict=True, validate=validate.Range(min=0)), required=True)


class RbfTermSchema(_TermSchema):
    term_class = RbfTerm

    family = fields.Constant("rbf")
    amp = fields.Float(required=True)
    center = fields.List(fields.Float(), required=True, validate=validate.Length(min=1))
    width = fields.Float(required=True, validate=validate.Range(min=0.0, min_inclusive=False))


class TrigTermSchema(_TermSchema):
    term_class = TrigTerm

    family = fields.Constant("trig")
    coeff = fields.Float(required=True)
    freqs = fields.List(fields.Integer(strict=True), required=True, validate=validate.Length(min=1))
    phases = fields.List(fields.Float(), required=True)
    damping = fields.Float(load_default=0.0, validate=validate.Range(min=0.0))
    exponents = fields.List(fields.Integer(strict=True, validate=validate.Range(min=0)), load_default=None)


class LinearArgTermSchema(_TermSchema):
    term_class = LinearArgTerm

    family = fields.Constant("linear_arg")
    coeff = fields.Float(required=True)
    activation = fields.Enum(Activation, by_value=True, required=True)
    direction = fields.List(fields.Float(), required=True, validate=validate.Length(min=1))
    smoothed_sigma = fields.Float(load_default=0.0, validate=validate.Range(min=0.0))


TERM_SCHEMAS = {
    "monomial": MonomialTermSchema,
    "rbf": RbfTermSchema,
    "trig": TrigTermSchema,
    "linear_arg": LinearArgTermSchema,
}


class TermField(fields.Field):
    """Dispatches on the `family` key."""

    def _serialize(self, value, attr, obj, **kwargs):
        if value is None:
            return None
        return TERM_SCHEMAS[value.family.value]().dump(value)

    def _deserialize(self, value, attr, data, **kwargs):
        if not isinstance(value, dict):
            raise ValidationError("term must be an object")
        family = value.get("family")
        if family not in TERM_SCHEMAS:
            raise ValidationError(f"family must be one of {sorted(TERM_SCHEMAS)}, got {family!r}")
        return TERM_SCHEMAS[family]().load(value)


class ExpressionSchema(Schema):
    dimension = fields.Integer(strict=True, required=True, validate=validate.Range(min=1))
    terms = fields.List(TermField(), load_default=list)

    @validates_schema
    def validate_dimensions(self, data, **kwargs):
        for i, term in enumerate(data.get("terms", [])):
            if term.dimension != data["dimension"]:
                raise ValidationError(
                    f"term {i} has dimension {term.dimension}, expected {data['dimension']}", "terms"
                )

    @post_load
    def make_expression(self, data, **kwargs):
        return Expression.build(data["dimension"], data.get("terms", []))


class SigmaMonomialSchema(Schema):
    x_power = fields.Integer()
    sigma_power = fields.Integer()
    coeff = fields.Integer()


class SigmaPolynomialSchema(Schema):
    degree = fields.Integer()
    terms = fields.List(fields.Nested(SigmaMonomialSchema))
    text = fields.Function(lambda polynomial: polynomial.render())


class StageReportSchema(Schema):
    sigma = fields.Float()
    iterations = fields.Integer()
    point = fields.List(fields.Float())
    value = fields.Float()
    gradient_norm = fields.Float()
    evaluations = fields.Integer()
    converged = fields.Boolean()
    status = fields.String()


class SolveReportSchema(Schema):
    stages = fields.List(fields.Nested(StageReportSchema))
    converged = fields.Boolean()
    evaluations = fields.Integer()
    point = fields.List(fields.Float(), allow_none=True)
    value = fields.Float(allow_none=True)
    message = fields.String(allow_none=True)
    failed_sigma = fields.Float(allow_none=True)


class VerificationPointSchema(Schema):
    point = fields.List(fields.Float())
    closed_form = fields.Float()
    oracle = fields.Float()
    error = fields.Float()
    error_estimate = fields.Float()


class VerifyReportSchema(Schema):
    sigma = fields.Float()
    tol = fields.Float()
    max_error = fields.Float()
    passed = fields.Boolean()
    points = fields.List(fields.Nested(VerificationPointSchema))
