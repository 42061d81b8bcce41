import click
import pandas as pd

from ..homotopy import minimize_homotopy
from ..models import Schedule
from ..parser import parse
from ..schemas import SolveReportSchema
from .helpers import EXIT_NOT_CONVERGED, EXIT_OK, exits_on_error, number_format, read_source, vector_option


def register(cli, config):
    @cli.command("optimize")
    @click.argument("expression")
    @click.option("--x0", required=True, callback=vector_option, help="Comma-separated starting point.")
    @click.option("--sigma-max", type=click.FloatRange(min=0.0, min_open=True), default=config.SIGMA_MAX,
                  show_default=True)
    @click.option("--sigma-min", type=click.FloatRange(min=0.0, min_open=True), default=config.SIGMA_MIN,
                  show_default=True)
    @click.option("--steps", type=click.IntRange(min=1), default=config.SCHEDULE_STEPS, show_default=True)
    @click.option("--tol", type=click.FloatRange(min=0.0, min_open=True), default=config.TOL, show_default=True)
    @click.option("--max-iter", type=click.IntRange(min=1), default=config.MAX_ITER, show_default=True)
    @click.option("--format", "output_format", type=click.Choice(["text", "json"]), default="text")
    @click.option("--full-precision", is_flag=True)
    @exits_on_error
    def optimize_command(expression, x0, sigma_max, sigma_min, steps, tol, max_iter, output_format, full_precision):
        """Minimize EXPRESSION by graduated optimization from X0."""
        parsed = parse(read_source(expression), dimension=len(x0))
        if sigma_min > sigma_max or (steps > 1 and sigma_min == sigma_max):
            raise click.BadParameter("--sigma-min must be below --sigma-max", param_hint="--sigma-min")
        schedule = Schedule.geometric(sigma_max, sigma_min, steps)
        report = minimize_homotopy(parsed, schedule, x0, tol=tol, max_iter=max_iter, config=config)
        if output_format == "json":
            click.echo(SolveReportSchema().dumps(report, indent=2))
        else:
            fmt = number_format(full_precision, config.SIGNIFICANT_DIGITS)
            frame = pd.DataFrame(
                {
                    "sigma": [s.sigma for s in report.stages],
                    "iterations": [s.iterations for s in report.stages],
                    "value": [s.value for s in report.stages],
                    "gradient_norm": [s.gradient_norm for s in report.stages],
                    "status": [s.status for s in report.stages],
                }
            )
            click.echo(frame.to_string(index=False, float_format=fmt))
            if report.point is not None:
                click.echo(f"point: ({', '.join(fmt(v) for v in report.point)})")
                click.echo(f"value: {fmt(report.value)}")
            click.echo(f"converged: {'yes' if report.converged else 'no'}")
            if report.message:
                click.echo(f"note: {report.message}")
        return EXIT_OK if report.converged else EXIT_NOT_CONVERGED
