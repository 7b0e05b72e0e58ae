# commands/mixture_commands.py
import click

from commands.cli_common import emit, family_from_options, family_options, output_option

_DIST_HELP = 'JSON file, "uniform", "parity:even|odd", "point:<config>" or "random:<seed>".'


@click.command("decompose")
@family_options
@click.option("--dist", required=True, help=_DIST_HELP)
@click.option("--cover", "cover", type=click.Choice(["auto", "min", "lines", "cylinder", "recursive"]), default="auto")
@click.option("--epsilon", type=float, default=None, help="Also smooth components within this TV budget.")
@output_option
def decompose(binary, arity, k, kind, ngon, interactions, dist, cover, epsilon, output):
    """Exact mixture decomposition of a distribution from an S-set cover."""
    family = family_from_options(binary, arity, k, kind, ngon, interactions)
    return emit("decompose", family, distribution=dist, cover=cover, epsilon=epsilon, output=output)


@click.command("lower-bound")
@family_options
@click.option("--dist", required=True, help=_DIST_HELP)
@output_option
def lower_bound(binary, arity, k, kind, ngon, interactions, dist, output):
    """Fewest components any mixture of the family needs to reach the distribution."""
    family = family_from_options(binary, arity, k, kind, ngon, interactions)
    return emit("lower-bound", family, distribution=dist, output=output)


@click.command("sufficient")
@family_options
@click.option("--dist", required=True, help=_DIST_HELP)
@output_option
def sufficient(binary, arity, k, kind, ngon, interactions, dist, output):
    family = family_from_options(binary, arity, k, kind, ngon, interactions)
    return emit("sufficient", family, distribution=dist, output=output)


@click.command("smooth")
@family_options
@click.option("--dist", required=True, help="Distribution supported on an S-set.")
@click.option("--t", "ladder", type=str, default=None, help="Comma-separated rational t values.")
@output_option
def smooth(binary, arity, k, kind, ngon, interactions, dist, ladder, output):
    """Strictly positive family members converging to the distribution."""
    family = family_from_options(binary, arity, k, kind, ngon, interactions)
    ts = [t.strip() for t in ladder.split(",")] if ladder else None
    return emit("smooth", family, distribution=dist, t=ts, output=output)


@click.command("pentagon-solve")
@click.option("--dist", default=None, help=_DIST_HELP + " Omit to run a seeded batch.")
@click.option("--random", "count", type=int, default=None, help="Batch size for seeded random targets.")
@click.option("--tol", type=float, default=None)
@output_option
def pentagon_solve(dist, count, tol, output):
    """Two-component mixtures of the pentagon family."""
    return emit("pentagon-solve", distribution=dist, random=count, tol=tol, output=output)


MIXTURE_COMMANDS = (decompose, lower_bound, sufficient, smooth, pentagon_solve)
