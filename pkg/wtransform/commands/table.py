import click
import pandas as pd

from ..schemas import SigmaPolynomialSchema
from ..smoothing import monomial_table
from .helpers import EXIT_OK, exits_on_error


def register(cli, config):
    @cli.command("table")
    @click.option("--pmax", type=int, default=10, show_default=True, help="Largest monomial degree.")
    @click.option("--format", "output_format", type=click.Choice(["text", "json"]), default="text")
    @exits_on_error
    def table_command(pmax, output_format):
        """Print u(x, p, sigma), the smoothed monomial x^p, for p = 0..PMAX."""
        rows = monomial_table(pmax, limit=config.TABLE_MAX_DEGREE)
        if output_format == "json":
            click.echo(SigmaPolynomialSchema(many=True).dumps(rows, indent=2))
        else:
            frame = pd.DataFrame({"p": [row.degree for row in rows], "u(x,p,σ)": [row.render() for row in rows]})
            click.echo(frame.to_string(index=False, justify="left"))
        return EXIT_OK
