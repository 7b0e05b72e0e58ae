# commands/cover_commands.py
import click

from commands.cli_common import emit, family_from_options, family_options, output_option, parse_target


@click.group("cover")
def cover_group():
    """S-set covers and facial packings."""


@cover_group.command("min")
@family_options
@click.option("--target", default=None, help="Subset to cover (default: all of X).")
@output_option
def cover_min(binary, arity, k, kind, ngon, interactions, target, output):
    """Minimum S-set cover with optimality evidence."""
    family = family_from_options(binary, arity, k, kind, ngon, interactions)
    return emit("cover min", family, parse_target(target), output=output)


@cover_group.command("packing")
@family_options
@click.option("--target", required=True)
@output_option
def cover_packing(binary, arity, k, kind, ngon, interactions, target, output):
    """Minimum facial packing of the target."""
    family = family_from_options(binary, arity, k, kind, ngon, interactions)
    return emit("cover packing", family, parse_target(target), output=output)


@cover_group.command("cylinder")
@family_options
@output_option
def cover_cylinder(binary, arity, k, kind, ngon, interactions, output):
    family = family_from_options(binary, arity, k, kind, ngon, interactions)
    return emit("cover cylinder", family, output=output)


@cover_group.command("lines")
@family_options
@output_option
def cover_lines(binary, arity, k, kind, ngon, interactions, output):
    family = family_from_options(binary, arity, k, kind, ngon, interactions)
    return emit("cover lines", family, output=output)


@cover_group.command("recursive")
@family_options
@output_option
def cover_recursive(binary, arity, k, kind, ngon, interactions, output):
    """Recursive edge-removal cover of the binary cube for E^k."""
    family = family_from_options(binary, arity, k, kind, ngon, interactions)
    return emit("cover recursive", family, output=output)


@click.command("verify")
@family_options
@click.option("--cover", "cover_path", type=click.Path(exists=True, dir_okay=False), required=True)
@output_option
def verify(binary, arity, k, kind, ngon, interactions, cover_path, output):
    """Re-verify a cover report against the oracles."""
    family = family_from_options(binary, arity, k, kind, ngon, interactions)
    return emit("verify", family, cover=cover_path, output=output)


@click.command("kappa-cross")
@family_options
@click.option("--other-k", type=int, required=True, help="Interaction order of the second family.")
@output_option
def kappa_cross(binary, arity, k, kind, ngon, interactions, other_k, output):
    """max over facial sets Z of E^{other-k} of the facial packing number of Z."""
    family = family_from_options(binary, arity, k, kind, ngon, interactions)
    other = family_from_options(binary, arity, other_k, "kinteraction")
    return emit("kappa-cross", family, other=other.to_json() if other else None, output=output)


COVER_COMMANDS = (cover_group, verify, kappa_cross)
