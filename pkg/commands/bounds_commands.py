# commands/bounds_commands.py
import click

from commands.cli_common import emit, output_option
from commands.jobs import JobSpec, run
from commands.recipes import RECIPES


@click.group("bounds")
def bounds_group():
    """Coding-theory bounds and S-set cardinality bounds."""


@bounds_group.command("gv")
@click.option("--q", "q", type=int, required=True)
@click.option("--n", "N", type=int, required=True)
@click.option("--d", "d", type=int, required=True)
@output_option
def gv(q, N, d, output):
    return emit("bounds gv", q=q, N=N, d=d, output=output)


@bounds_group.command("singleton")
@click.option("--q", "q", type=int, required=True)
@click.option("--n", "N", type=int, required=True)
@click.option("--d", "d", type=int, required=True)
@output_option
def singleton(q, N, d, output):
    return emit("bounds singleton", q=q, N=N, d=d, output=output)


@bounds_group.command("parity")
@click.option("--q", "q", type=int, required=True)
@click.option("--n", "N", type=int, required=True)
@output_option
def parity(q, N, output):
    """Distance-2 parity code with its verified witness."""
    return emit("bounds parity", q=q, N=N, output=output)


@bounds_group.command("marking")
@click.option("--n", "N", type=int, required=True)
@click.option("--r", "R", type=int, required=True)
@click.option("--exact-max-n", type=int, default=None)
@output_option
def marking(N, R, exact_max_n, output):
    """Marking number K(N, R) of the binary cube."""
    return emit("bounds marking", N=N, R=R, exact_max_n=exact_max_n, output=output)


@bounds_group.command("sset-cardinality")
@click.option("--n", "N", type=int, required=True)
@click.option("--k", "k", type=int, required=True)
@output_option
def sset_cardinality(N, k, output):
    return emit("bounds sset-cardinality", N=N, k=k, output=output)


@click.command("reproduce")
@click.argument("example", type=click.Choice(sorted(RECIPES)))
@click.option("--random", "count", type=int, default=None, help="Number of random targets where the recipe samples.")
@output_option
def reproduce(example, count, output):
    """Recompute a named example and compare with its expected values."""
    return emit("reproduce", example=example, random=count, output=output)


@click.command("run-job")
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
def run_job(path):
    """Execute a JobSpec JSON file."""
    job = JobSpec.load(path)
    outcome = run(job)
    if not job.option("output"):
        click.echo(outcome.report, nl=False)
    return outcome.status


BOUNDS_COMMANDS = (bounds_group, reproduce, run_job)
