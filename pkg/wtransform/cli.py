import logging
import sys

import click

from .commands import register_commands
from .commands.helpers import EXIT_OK, EXIT_USAGE
from .config import get_config


class ExitCodeGroup(click.Group):
    """
    Click group where usage errors exit with 1 and each command's return
    value becomes the process exit code.
    """

    def main(self, args=None, prog_name=None, complete_var=None, standalone_mode=True, **extra):
        try:
            rv = super().main(
                args=args, prog_name=prog_name, complete_var=complete_var, standalone_mode=False, **extra
            )
        except click.exceptions.Abort:
            click.echo("Aborted!", err=True)
            sys.exit(EXIT_USAGE)
        except click.ClickException as exc:
            exc.show()
            sys.exit(EXIT_USAGE)
        sys.exit(rv if isinstance(rv, int) else EXIT_OK)


def create_cli(config_name=None):
    config = get_config(config_name)

    @click.group(cls=ExitCodeGroup)
    @click.pass_context
    def cli(ctx):
        """Closed-form Gaussian smoothing of analytic expressions."""
        logging.basicConfig(
            level=config.LOG_LEVEL,
            stream=sys.stderr,
            format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        )
        ctx.obj = config

    register_commands(cli, config)
    return cli


def main():
    create_cli()()
