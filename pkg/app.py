# app.py
import sys

import click

from commands.bounds_commands import BOUNDS_COMMANDS
from commands.cover_commands import COVER_COMMANDS
from commands.mixture_commands import MIXTURE_COMMANDS
from commands.oracle_commands import ORACLE_COMMANDS
from utils.config import get_settings
from utils.errors import CapacityError, SsetKitError
from utils.logging_config import configure_logging

EXIT_OK = 0
EXIT_MALFORMED = 1
EXIT_VERIFICATION = 2
EXIT_CAPACITY = 3


def create_cli() -> click.Group:
    settings = get_settings()

    @click.group(name="sset-kit")
    @click.option("--log-level", default=settings.log_level, show_default=True)
    @click.option("--threads", type=int, default=None, help="Worker processes for parallel sweeps.")
    @click.option("--guard", type=int, default=None, help="Largest |X| for exhaustive enumeration.")
    @click.option("--node-budget", type=int, default=None, help="Branch-and-bound node limit.")
    @click.option("--seed", type=int, default=None, help="Seed for every random draw.")
    @click.pass_context
    def cli(ctx, log_level, threads, guard, node_budget, seed):
        """Facial sets, S-set covers and mixture decompositions of discrete exponential families."""
        configure_logging(log_level)
        ctx.obj = {"threads": threads, "guard": guard, "node_budget": node_budget, "seed": seed}

    for command in (*ORACLE_COMMANDS, *COVER_COMMANDS, *MIXTURE_COMMANDS, *BOUNDS_COMMANDS):
        cli.add_command(command)
    return cli


def main(argv=None) -> int:
    """Run the CLI and map outcomes to exit codes (0 ok, 1 malformed, 2 verification, 3 capacity)."""
    cli = create_cli()
    try:
        status = cli.main(args=argv, prog_name="sset-kit", standalone_mode=False)
    except CapacityError as exc:
        click.echo(f"Error: capacity guard: {exc}", err=True)
        return EXIT_CAPACITY
    except click.ClickException as exc:
        exc.show()
        return EXIT_MALFORMED
    except click.Abort:
        return EXIT_MALFORMED
    except SsetKitError as exc:
        click.echo(f"Error: {exc}", err=True)
        return EXIT_MALFORMED
    return status if isinstance(status, int) else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
