import logging
import math
from functools import wraps
from typing import Optional, Tuple

import click

from ..exceptions import (
    ExpressionError,
    LimitError,
    OracleError,
    ParseError,
    StageError,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_ORACLE = 3
EXIT_NOT_CONVERGED = 4


def exits_on_error(f):
    """
    Decorator: runs a command body and turns library errors into the CLI's
    exit codes, writing the message to stderr.
    """
    @wraps(f)
    def decorated_function(*args, **kwargs):
        try:
            return f(*args, **kwargs)
        except ParseError as exc:
            click.echo(exc.annotate(exc.source) if exc.source is not None else f"error: {exc}", err=True)
            return EXIT_PARSE
        except LimitError as exc:
            click.echo(f"error: {exc}", err=True)
            return EXIT_USAGE
        except ExpressionError as exc:
            click.echo(f"error: {exc}", err=True)
            return EXIT_PARSE
        except OracleError as exc:
            logger.exception("Oracle failed")
            click.echo(f"error: {exc}", err=True)
            return EXIT_ORACLE
        except StageError as exc:
            click.echo(f"error: {exc}", err=True)
            return EXIT_NOT_CONVERGED
    return decorated_function


def read_source(value: str) -> str:
    """The expression argument, or stdin when it is '-'."""
    if value == "-":
        return click.get_text_stream("stdin").read()
    return value


def vector_option(ctx, param, value) -> Optional[Tuple[float, ...]]:
    """Click callback parsing "1,2.5,-3" into a tuple of floats."""
    if value is None:
        return None
    try:
        values = tuple(float(v) for v in value.split(","))
    except ValueError:
        raise click.BadParameter(f"expected comma-separated numbers, got {value!r}")
    if not all(math.isfinite(v) for v in values):
        raise click.BadParameter(f"coordinates must be finite, got {value!r}")
    return values


def number_format(full_precision: bool, digits: int):
    if full_precision:
        return repr
    return lambda v: f"{v:.{digits}g}"
