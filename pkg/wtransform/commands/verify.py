import click
import pandas as pd

from ..oracle import ConvolutionOracle, OracleConfig, verify_expression
from ..parser import parse
from ..schemas import VerifyReportSchema
from .helpers import EXIT_OK, EXIT_ORACLE, exits_on_error, number_format, read_source


def register(cli, config):
    @cli.command("verify")
    @click.argument("expression")
    @click.option("--sigma", type=click.FloatRange(min=0.0, min_open=True), required=True)
    @click.option("--points", type=click.IntRange(min=1), default=config.VERIFY_POINTS, show_default=True)
    @click.option("--seed", type=click.IntRange(min=0), default=config.VERIFY_SEED, show_default=True)
    @click.option("--tol", type=click.FloatRange(min=0.0, min_open=True), default=None,
                  help="Defaults to 1e-8, or 1e-6 when sign/relu terms are present.")
    @click.option("--range", "sample_range", type=click.FloatRange(min=0.0, min_open=True),
                  default=config.VERIFY_RANGE, show_default=True, help="Sample points in [-range, range]^n.")
    @click.option("--format", "output_format", type=click.Choice(["text", "json"]), default="text")
    @click.option("--full-precision", is_flag=True)
    @exits_on_error
    def verify_command(expression, sigma, points, seed, tol, sample_range, output_format, full_precision):
        """Compare the closed-form smoothing of EXPRESSION against numerical quadrature."""
        parsed = parse(read_source(expression))
        oracle = ConvolutionOracle(OracleConfig.from_config(config))
        report = verify_expression(
            parsed, sigma, config, oracle=oracle, points=points, seed=seed, tol=tol, sample_range=sample_range
        )
        if output_format == "json":
            click.echo(VerifyReportSchema().dumps(report, indent=2))
        else:
            fmt = number_format(full_precision, config.SIGNIFICANT_DIGITS)
            frame = pd.DataFrame(
                {
                    "point": [", ".join(fmt(v) for v in p.point) for p in report.points],
                    "closed_form": [p.closed_form for p in report.points],
                    "oracle": [p.oracle for p in report.points],
                    "error": [p.error for p in report.points],
                    "estimate": [p.error_estimate for p in report.points],
                }
            )
            click.echo(frame.to_string(index=False, float_format=fmt))
            verdict = "passed" if report.passed else "FAILED"
            click.echo(f"{verdict}: max error {report.max_error:.3g} (tol {report.tol:.3g})")
        return EXIT_OK if report.passed else EXIT_ORACLE
