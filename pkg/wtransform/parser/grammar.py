"""
Recursive-descent parser for the expression language:

    expr   := term (("+" | "-") term)*
    term   := factor ("*" factor)*
    factor := ("+" | "-") factor | base ("^" UINT)?
    base   := NUMBER | VAR | "(" expr ")" | func
    func   := ("sin" | "cos") "(" linear (";" "sigma" "=" NUMBER)? ")"
            | ("sign" | "relu") "(" linear (";" "sigma" "=" NUMBER)? ")"
            | "rbf" "(" "amp" "=" NUMBER "," "center" "=" vector "," "width" "=" NUMBER ")"
            | "exp" "(" NUMBER ")"

Products and powers are expanded while parsing.
"""
import itertools
import logging
import math
from typing import List, NamedTuple, Optional, Tuple, Union

from marshmallow import ValidationError

from ..activations import Activation
from ..algebra import expand_power, expand_product
from ..config import get_config
from ..exceptions import LimitError, ParseError, SourceSpan
from ..models import Expression, LinearArgTerm, RbfTerm, TrigTerm, canonicalize
from ..models.terms import HALF_PI
from .lexer import Token, TokenKind, tokenize

logger = logging.getLogger(__name__)

FUNCTIONS = ("sin", "cos", "sign", "relu", "rbf", "exp")


class _Damping(NamedTuple):
    """An exp(NUMBER) factor, applied once the whole product is known."""

    exponent: float
    scale: float = 1.0


Factor = Union[Expression, _Damping]


def _apply_damping(expression: Expression, exponent: float) -> Expression:
    terms = []
    for term in expression.terms:
        if isinstance(term, TrigTerm) and term.damping - exponent >= 0.0:
            terms.append(TrigTerm(term.coeff, term.freqs, term.phases, term.damping - exponent, term.exponents))
        else:
            terms.append(term.scaled(math.exp(exponent)))
    return canonicalize(Expression(expression.dimension, tuple(terms)))


def _inferred_dimension(tokens: List[Token], limit: int) -> int:
    dimension = 1
    inside, length = False, 0
    for token in tokens:
        if token.kind is TokenKind.VAR:
            if token.index > limit:
                raise ParseError(f"x{token.index} exceeds the dimension limit of {limit}", token.span, [f"x1..x{limit}"])
            dimension = max(dimension, token.index)
        elif token.kind is TokenKind.LBRACKET:
            inside, length = True, 0
        elif token.kind is TokenKind.NUMBER and inside:
            length += 1
        elif token.kind is TokenKind.RBRACKET and inside:
            inside = False
            if length > limit:
                raise ParseError(f"vector of length {length} exceeds the dimension limit of {limit}", token.span)
            dimension = max(dimension, length)
    return dimension


class _Parser:
    def __init__(self, src: str, tokens: List[Token], dimension: int) -> None:
        self.src = src
        self.tokens = tokens
        self.dimension = dimension
        self.pos = 0

    # ---------- token helpers ----------

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def previous(self) -> Token:
        return self.tokens[max(self.pos - 1, 0)]

    def advance(self) -> Token:
        token = self.tokens[self.pos]
        if token.kind is not TokenKind.END:
            self.pos += 1
        return token

    def expect(self, kind: TokenKind, description: Optional[str] = None) -> Token:
        token = self.peek()
        if token.kind is not kind:
            raise ParseError(self._unexpected(token), token.span, [description or kind.value])
        return self.advance()

    def expect_name(self, name: str) -> Token:
        token = self.peek()
        if token.kind is not TokenKind.NAME or token.text != name:
            raise ParseError(self._unexpected(token), token.span, [repr(name)])
        return self.advance()

    @staticmethod
    def _unexpected(token: Token) -> str:
        if token.kind is TokenKind.END:
            return "unexpected end of input"
        return f"unexpected {token.text!r}"

    def span_from(self, start: Token) -> SourceSpan:
        return SourceSpan(start.span.start, max(start.span.end, self.previous().span.end))

    # ---------- grammar ----------

    def parse(self) -> Expression:
        expression = self.expr()
        token = self.peek()
        if token.kind is not TokenKind.END:
            raise ParseError(self._unexpected(token), token.span, ["operator", "end of input"])
        return expression

    def expr(self) -> Expression:
        left = self.term()
        while self.peek().kind in (TokenKind.PLUS, TokenKind.MINUS):
            op = self.advance()
            right = self.term()
            if op.kind is TokenKind.PLUS:
                left = self._semantic(lambda: left + right, op.span)
            else:
                left = self._semantic(lambda: left - right, op.span)
        return left

    def term(self) -> Expression:
        start = self.peek()
        result: Optional[Expression] = None
        exponent, scale = 0.0, 1.0
        while True:
            factor_start = self.peek()
            factor = self.factor()
            if isinstance(factor, _Damping):
                exponent += factor.exponent
                scale *= factor.scale
            elif result is None:
                result = factor
            else:
                result = self._semantic(lambda: expand_product(result, factor), self.span_from(factor_start))
            if self.peek().kind is not TokenKind.STAR:
                break
            self.advance()
        if result is None:
            result = Expression.constant(self.dimension, 1.0)
        if scale != 1.0:
            result = self._semantic(lambda: result.scaled(scale), self.span_from(start))
        if exponent != 0.0:
            result = self._semantic(lambda: _apply_damping(result, exponent), self.span_from(start))
        return result

    def factor(self) -> Factor:
        token = self.peek()
        if token.kind is TokenKind.MINUS:
            self.advance()
            inner = self.factor()
            if isinstance(inner, _Damping):
                return _Damping(inner.exponent, -inner.scale)
            return self._semantic(lambda: -inner, token.span)
        if token.kind is TokenKind.PLUS:
            self.advance()
            return self.factor()
        base = self.base()
        if self.peek().kind is not TokenKind.CARET:
            return base
        caret = self.advance()
        power = self.peek()
        if not power.is_integer:
            raise ParseError(self._unexpected(power), power.span, ["nonnegative integer"])
        self.advance()
        span = SourceSpan(caret.span.start, power.span.end)
        limit = get_config().MAX_POWER
        k = int(power.text) if len(power.text) <= 9 else limit + 1
        if k > limit:
            raise ParseError(f"power {power.text} exceeds the limit of {limit}", span, [f"power <= {limit}"])
        if isinstance(base, _Damping):
            return _Damping(base.exponent * k, base.scale ** k)
        return self._semantic(lambda: expand_power(base, k), span)

    def base(self) -> Factor:
        token = self.peek()
        if token.kind is TokenKind.NUMBER:
            self.advance()
            return Expression.constant(self.dimension, token.number)
        if token.kind is TokenKind.VAR:
            self.advance()
            return Expression.variable(self.dimension, token.index)
        if token.kind is TokenKind.LPAREN:
            self.advance()
            inner = self.expr()
            self.expect(TokenKind.RPAREN)
            return inner
        if token.kind is TokenKind.NAME:
            if token.text not in FUNCTIONS:
                raise ParseError(f"unknown function {token.text!r}", token.span, list(FUNCTIONS))
            self.advance()
            return getattr(self, f"_{token.text}")(token)
        raise ParseError(self._unexpected(token), token.span, ["number", "variable", "'('", "function"])

    # ---------- functions ----------

    def _cos(self, name: Token) -> Expression:
        return self._periodic(name)

    def _sin(self, name: Token) -> Expression:
        return self._periodic(name)

    def _sign(self, name: Token) -> Expression:
        return self._activation(name, Activation.SIGN)

    def _relu(self, name: Token) -> Expression:
        return self._activation(name, Activation.RELU)

    def _exp(self, name: Token) -> _Damping:
        self.expect(TokenKind.LPAREN)
        value, _ = self.signed_number()
        self.expect(TokenKind.RPAREN)
        return _Damping(value)

    def _rbf(self, name: Token) -> Expression:
        self.expect(TokenKind.LPAREN)
        self.expect_name("amp")
        self.expect(TokenKind.EQUALS)
        amp, _ = self.signed_number()
        self.expect(TokenKind.COMMA)
        self.expect_name("center")
        self.expect(TokenKind.EQUALS)
        center, center_span = self.vector()
        self.expect(TokenKind.COMMA)
        self.expect_name("width")
        self.expect(TokenKind.EQUALS)
        width, width_span = self.signed_number()
        self.expect(TokenKind.RPAREN)
        if len(center) != self.dimension:
            raise ParseError(
                f"rbf center has {len(center)} coordinates, expression has dimension {self.dimension}",
                center_span,
                [f"vector of length {self.dimension}"],
            )
        if width <= 0.0:
            raise ParseError(f"rbf width must be positive, got {width}", width_span, ["positive number"])
        return self._semantic(
            lambda: Expression.build(self.dimension, [RbfTerm(amp, center, width)]), self.span_from(name)
        )

    def _periodic(self, name: Token) -> Expression:
        self.expect(TokenKind.LPAREN)
        coeffs, constant, constant_span = self.linear()
        sigma, sigma_span = self.sigma_suffix()
        self.expect(TokenKind.RPAREN)
        integral = all(float(c).is_integer() for c in coeffs)
        if name.text == "cos" and not integral:
            raise ParseError(
                "cos takes integer frequencies", self.span_from(name), ["integer coefficients"]
            )
        if name.text == "cos" and sigma_span is not None:
            raise ParseError("cos does not take a sigma", sigma_span, ["')'"])
        if name.text == "sin" and (sigma_span is not None or not integral):
            if constant_span is not None:
                raise ParseError(
                    "sin with real coefficients takes no constant; append a variable fixed at 1 instead",
                    constant_span,
                    ["variable"],
                )
            return self._semantic(
                lambda: Expression.build(self.dimension, [LinearArgTerm(1.0, Activation.SIN, coeffs, sigma)]),
                self.span_from(name),
            )
        freqs = [int(c) for c in coeffs]
        return self._semantic(lambda: self._harmonic(name.text, freqs, constant), self.span_from(name))

    def _harmonic(self, name: str, freqs: List[int], constant: float) -> Expression:
        """
        cos or sin of sum_d k_d x_d + constant, expanded by angle addition.
        Each term picks cos or sin per active variable; the real part (cos)
        keeps an even number of sines and the imaginary part (sin) an odd one.
        """
        n = self.dimension
        active = [d for d, k in enumerate(freqs) if k != 0]
        if not active:
            return Expression.constant(n, math.cos(constant) if name == "cos" else math.sin(constant))
        limit = get_config().MAX_TERMS
        if 2 ** (len(active) - 1) > limit:
            raise LimitError(
                f"{name} of a sum over {len(active)} variables expands into 2^{len(active) - 1} terms, "
                f"over the limit of {limit}"
            )
        parity = 0 if name == "cos" else 1
        terms = []
        for sines in itertools.product((False, True), repeat=len(active)):
            count = sum(sines)
            if count % 2 != parity:
                continue
            phases = [0.0] * n
            phases[active[0]] = constant
            for d, is_sine in zip(active, sines):
                if is_sine:
                    phases[d] -= HALF_PI
            sign = -1.0 if (count // 2) % 2 else 1.0
            terms.append(TrigTerm(sign, tuple(freqs), tuple(phases)))
        return Expression.build(n, terms)

    def _activation(self, name: Token, activation: Activation) -> Expression:
        self.expect(TokenKind.LPAREN)
        coeffs, _, constant_span = self.linear()
        sigma, _ = self.sigma_suffix()
        self.expect(TokenKind.RPAREN)
        if constant_span is not None:
            raise ParseError(
                f"{name.text} takes no constant; append a variable fixed at 1 instead",
                constant_span,
                ["variable"],
            )
        return self._semantic(
            lambda: Expression.build(self.dimension, [LinearArgTerm(1.0, activation, coeffs, sigma)]),
            self.span_from(name),
        )

    # ---------- pieces ----------

    def signed_number(self) -> Tuple[float, SourceSpan]:
        start = self.peek()
        sign = 1.0
        if start.kind in (TokenKind.PLUS, TokenKind.MINUS):
            sign = -1.0 if start.kind is TokenKind.MINUS else 1.0
            self.advance()
        number = self.expect(TokenKind.NUMBER)
        return sign * number.number, self.span_from(start)

    def vector(self) -> Tuple[List[float], SourceSpan]:
        start = self.expect(TokenKind.LBRACKET)
        values = [self.signed_number()[0]]
        while self.peek().kind is TokenKind.COMMA:
            self.advance()
            values.append(self.signed_number()[0])
        self.expect(TokenKind.RBRACKET, "',' or ']'")
        return values, self.span_from(start)

    def sigma_suffix(self) -> Tuple[float, Optional[SourceSpan]]:
        if self.peek().kind is not TokenKind.SEMICOLON:
            return 0.0, None
        start = self.advance()
        self.expect_name("sigma")
        self.expect(TokenKind.EQUALS)
        value, span = self.signed_number()
        if value < 0.0:
            raise ParseError(f"sigma must be nonnegative, got {value}", span, ["nonnegative number"])
        return value, self.span_from(start)

    def linear(self) -> Tuple[List[float], float, Optional[SourceSpan]]:
        """a1*x1 + ... + an*xn + b; returns the coefficients, b and the span of the first constant."""
        coeffs = [0.0] * self.dimension
        constant, constant_span = 0.0, None
        sign = 1.0
        if self.peek().kind in (TokenKind.PLUS, TokenKind.MINUS):
            sign = -1.0 if self.advance().kind is TokenKind.MINUS else 1.0
        while True:
            token = self.peek()
            if token.kind is TokenKind.NUMBER:
                self.advance()
                if self.peek().kind is TokenKind.STAR:
                    self.advance()
                    var = self.expect(TokenKind.VAR)
                    coeffs[var.index - 1] += sign * token.number
                else:
                    constant += sign * token.number
                    constant_span = constant_span or token.span
            elif token.kind is TokenKind.VAR:
                self.advance()
                coeffs[token.index - 1] += sign
            else:
                raise ParseError(self._unexpected(token), token.span, ["number", "variable"])
            if self.peek().kind not in (TokenKind.PLUS, TokenKind.MINUS):
                return coeffs, constant, constant_span
            sign = -1.0 if self.advance().kind is TokenKind.MINUS else 1.0

    # ---------- semantic errors ----------

    @staticmethod
    def _semantic(build, span: SourceSpan):
        try:
            return build()
        except (ValueError, OverflowError) as exc:  # ExpressionError and LimitError included
            raise ParseError(str(exc), span) from exc


def _parse_json(src: str) -> Expression:
    from ..schemas import ExpressionSchema

    try:
        return ExpressionSchema().loads(src)
    except ValidationError as exc:
        raise ParseError(f"invalid expression document: {exc.messages}", SourceSpan(0, len(src))) from exc
    except ValueError as exc:
        pos = min(getattr(exc, "pos", 0), len(src))
        raise ParseError(f"invalid JSON: {exc}", SourceSpan(pos, min(pos + 1, len(src)))) from exc


def parse(src: str, dimension: Optional[int] = None) -> Expression:
    """
    Parses the expression language (or an expression JSON document when the
    input starts with "{"). The dimension is the largest variable index or
    rbf center length, raised to `dimension` when given.
    """
    try:
        if src.lstrip().startswith("{"):
            return _parse_json(src)
        tokens = tokenize(src)
        if tokens[0].kind is TokenKind.END:
            raise ParseError("empty input", SourceSpan(0, len(src)), ["expression"])
        limit = get_config().MAX_DIMENSION
        n = max(_inferred_dimension(tokens, limit), dimension or 1)
        try:
            return _Parser(src, tokens, n).parse()
        except RecursionError:
            raise ParseError("expression is nested too deeply", SourceSpan(0, len(src))) from None
    except ParseError as exc:
        exc.source = src
        logger.debug(f"Parse failed: {exc}")
        raise
