# commands/cli_common.py
"""
Options shared by the command modules and the bridge from click to run(job).
"""
from __future__ import annotations

import click

from commands.jobs import FAMILY_KINDS, FamilySpec, JobSpec, run
from utils.errors import MalformedJobError


def family_options(func):
    options = [
        click.option("--binary", type=int, default=None, help="Binary cube with N variables."),
        click.option("--arity", type=str, default=None, help="Comma-separated alphabet sizes, e.g. 3,3,3."),
        click.option("--k", "k", type=int, default=None, help="Interaction order."),
        click.option("--family", "kind", type=click.Choice(FAMILY_KINDS), default=None),
        click.option("--ngon", type=int, default=None, help="n-gon family on n points."),
        click.option("--interactions", type=str, default=None, help='1-based generators, e.g. "1,2;2,3".'),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def output_option(func):
    return click.option("--output", "-o", type=click.Path(dir_okay=False), default=None,
                        help="Write the JSON report to this file instead of stdout.")(func)


def _parse_ints(text: str, what: str) -> tuple[int, ...]:
    try:
        return tuple(int(v) for v in text.split(",") if v.strip())
    except ValueError as exc:
        raise MalformedJobError(f"cannot parse {what} {text!r}") from exc


def family_from_options(binary=None, arity=None, k=None, kind=None, ngon=None, interactions=None) -> FamilySpec | None:
    if ngon or kind == "ngon":
        return FamilySpec("ngon", n=ngon)
    if binary:
        arities = (2,) * binary
    elif arity:
        arities = _parse_ints(arity, "arities")
    else:
        return None
    generators = ()
    if interactions:
        generators = tuple(_parse_ints(g, "interaction") for g in interactions.split(";") if g.strip())
    if kind is None:
        kind = "interactions" if generators else ("kinteraction" if k is not None else "product")
    return FamilySpec(kind, arities, k=k, interactions=generators)


def parse_target(text: str | None) -> tuple[str, ...] | None:
    """Split a target list; ";" separates configurations whose labels contain commas."""
    if not text:
        return None
    separator = ";" if ";" in text else ","
    return tuple(t.strip() for t in text.split(separator) if t.strip())


def emit(command: str, family: FamilySpec | None = None, target=None, distribution=None, **options) -> int:
    """Run the job built from the current click context and print its report."""
    ctx = click.get_current_context()
    shared = dict(ctx.find_root().obj or {})
    shared.update({k: v for k, v in options.items() if v is not None})
    job = JobSpec(command, family, target, distribution, shared)
    outcome = run(job)
    if not shared.get("output"):
        click.echo(outcome.report, nl=False)
    return outcome.status
