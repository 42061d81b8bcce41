from dataclasses import dataclass
from typing import List, Optional, Tuple


class WTransformError(Exception):
    """Base class for every error raised by the library."""


class ExpressionError(WTransformError, ValueError):
    """A term or expression violates its invariants."""


class DimensionError(ExpressionError):
    pass


class FamilyError(ExpressionError):
    """An operation received a term family it does not handle."""


class UnsupportedProductError(ExpressionError):
    """No closed form is available for the requested product."""


class LimitError(WTransformError, ValueError):
    """A configured size limit (power, table degree, ...) was exceeded."""


class OracleError(WTransformError):
    pass


class StageError(WTransformError):
    """A homotopy stage aborted; `point` holds the last finite iterate."""

    def __init__(self, message: str, point: Tuple[float, ...]):
        super().__init__(message)
        self.point = point


class DivergenceError(StageError):
    pass


class NonFiniteObjectiveError(StageError):
    pass


@dataclass(frozen=True)
class SourceSpan:
    start: int
    end: int

    def __post_init__(self):
        if not 0 <= self.start <= self.end:
            raise ValueError(f"Invalid span {self.start}..{self.end}")


class ParseError(WTransformError):
    def __init__(self, message: str, span: SourceSpan, expected: Optional[List[str]] = None):
        super().__init__(message or "invalid input")
        self.message = message or "invalid input"
        self.span = span
        self.expected = list(expected or [])
        self.source: Optional[str] = None

    def __str__(self):
        text = f"{self.message} at {self.span.start}..{self.span.end}"
        if self.expected:
            text += f" (expected {', '.join(self.expected)})"
        return text

    def annotate(self, src: str) -> str:
        """Returns the message followed by the offending line with a caret marker."""
        line_start = src.rfind("\n", 0, self.span.start) + 1
        line_end = src.find("\n", self.span.start)
        if line_end == -1:
            line_end = len(src)
        line = src[line_start:line_end]
        col = self.span.start - line_start
        width = max(1, min(self.span.end, line_end) - self.span.start)
        return f"error: {self}\n  {line}\n  {' ' * col}{'^' * width}"
