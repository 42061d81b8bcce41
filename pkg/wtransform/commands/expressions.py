import json

import click

from ..parser import parse, print_expression
from ..schemas import ExpressionSchema
from ..smoothing import smooth
from .helpers import EXIT_OK, exits_on_error, number_format, read_source, vector_option


def register(cli, config):
    @cli.command("smooth")
    @click.argument("expression")
    @click.option("--sigma", type=click.FloatRange(min=0.0), required=True, help="Kernel width (>= 0).")
    @click.option("--format", "output_format", type=click.Choice(["text", "json"]), default="text")
    @click.option("--full-precision", is_flag=True, help="Print coefficients with full precision.")
    @exits_on_error
    def smooth_command(expression, sigma, output_format, full_precision):
        """Print the closed-form Weierstrass transform of EXPRESSION ('-' reads stdin).

        sign and relu take pure linear arguments; write a bias as a
        variable held at 1, e.g. relu(x1 - x2) evaluated with x2 = 1.
        """
        smoothed = smooth(parse(read_source(expression)), sigma)
        if output_format == "json":
            click.echo(ExpressionSchema().dumps(smoothed, indent=2))
        else:
            precision = None if full_precision else config.SIGNIFICANT_DIGITS
            click.echo(print_expression(smoothed, precision=precision))
        return EXIT_OK

    @cli.command("eval")
    @click.argument("expression")
    @click.option("--at", "point", required=True, callback=vector_option, help="Comma-separated point.")
    @click.option("--sigma", type=click.FloatRange(min=0.0), default=0.0, show_default=True)
    @click.option(
        "--dimension", type=click.IntRange(min=1), default=None,
        help="Raise the dimension above the largest variable index.",
    )
    @click.option("--format", "output_format", type=click.Choice(["text", "json"]), default="text")
    @click.option("--full-precision", is_flag=True)
    @exits_on_error
    def eval_command(expression, point, sigma, dimension, output_format, full_precision):
        """Evaluate EXPRESSION, smoothed by SIGMA, at a point.

        The point must have one coordinate per dimension; use --dimension
        when trailing variables do not appear in EXPRESSION.
        """
        parsed = parse(read_source(expression), dimension=dimension)
        value = smooth(parsed, sigma).evaluate(point)
        if output_format == "json":
            click.echo(json.dumps({"point": list(point), "sigma": sigma, "value": value}))
        else:
            click.echo(number_format(full_precision, config.SIGNIFICANT_DIGITS)(value))
        return EXIT_OK
