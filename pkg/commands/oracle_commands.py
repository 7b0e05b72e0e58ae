# commands/oracle_commands.py
import click

from commands.cli_common import emit, family_from_options, family_options, output_option, parse_target


@click.command("stats-build")
@family_options
@click.option("--csv", "csv_path", type=click.Path(dir_okay=False), default=None, help="Also export the matrix as CSV.")
@output_option
def stats_build(binary, arity, k, kind, ngon, interactions, csv_path, output):
    """Build the sufficient statistics of a family."""
    family = family_from_options(binary, arity, k, kind, ngon, interactions)
    return emit("stats-build", family, csv=csv_path, output=output)


@click.command("facial-check")
@family_options
@click.option("--target", required=True, help="Comma-separated configurations, e.g. 000,011 (use ; when labels contain commas).")
@output_option
def facial_check(binary, arity, k, kind, ngon, interactions, target, output):
    """Decide whether the target is facial; prints the certificate or witness."""
    family = family_from_options(binary, arity, k, kind, ngon, interactions)
    return emit("facial-check", family, parse_target(target), output=output)


@click.command("sset-check")
@family_options
@click.option("--target", required=True)
@output_option
def sset_check(binary, arity, k, kind, ngon, interactions, target, output):
    """Decide whether the target is an S-set."""
    family = family_from_options(binary, arity, k, kind, ngon, interactions)
    return emit("sset-check", family, parse_target(target), output=output)


@click.command("crosscheck")
@family_options
@click.option("--target", default=None, help="Single subset; omit to sweep every subset.")
@output_option
def crosscheck(binary, arity, k, kind, ngon, interactions, target, output):
    """Compare the rank-and-facial S-set test with the kernel criterion."""
    family = family_from_options(binary, arity, k, kind, ngon, interactions)
    return emit("crosscheck", family, parse_target(target), output=output)


@click.command("enumerate-faces")
@family_options
@click.option("--list-facets", is_flag=True, default=False)
@output_option
def enumerate_faces(binary, arity, k, kind, ngon, interactions, list_facets, output):
    """Facet census of the convex support."""
    family = family_from_options(binary, arity, k, kind, ngon, interactions)
    return emit("enumerate-faces", family, list_facets=list_facets or None, output=output)


@click.command("gale")
@click.option("--v", "v", type=int, required=True, help="Number of vertices.")
@click.option("--d", "d", type=int, required=True, help="Dimension.")
@output_option
def gale(v, d, output):
    """Facets of the cyclic polytope C(v, d) by Gale evenness."""
    return emit("gale", v=v, d=d, output=output)


ORACLE_COMMANDS = (stats_build, facial_check, sset_check, crosscheck, enumerate_faces, gale)
