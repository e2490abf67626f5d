"""The `hamel` command line."""

import functools
import logging
import sys
from collections import Counter
from typing import Dict, List, Optional, Tuple

import click

from ..core.basis import separated_basis, sorted_values, subspace_values
from ..core.errors import ExpressionSyntaxError, HamelError
from ..core.linear import UNBOUNDED, Interval, Point
from ..core.presentation import load_model, parse_bound, parse_point, save_model, term_to_vector
from ..core.tower import BallGen, FreeGen, Model, ValueGen, compare
from ..core.witness import (
    dense_pair_witness,
    density_witness,
    independence_witness,
    nonvalue_witness,
)
from ..lab.registry import SUITES, run_suite
from ..lab.report import Report
from ..logic.evaluate import TowerStructure, evaluate, evaluate_qf
from ..logic.parser import parse_formula
from ..logic.qe import Domain, decide_sentence, qe
from ..logic.syntax import is_quantifier_free, print_formula
from .core.config import configure_logging, get_settings

logger = logging.getLogger(__name__)

EXIT_FAILURES = 1
EXIT_ERROR = 2


def engine_errors(command):
    """Renders engine errors as one `error:` line and exits with status 2."""

    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except HamelError as error:
            logger.debug("command failed", exc_info=True)
            click.echo(f"error: {error}", err=True)
            sys.exit(EXIT_ERROR)

    return wrapper


def _settings(ctx: click.Context):
    return ctx.find_root().obj["settings"]


@click.group()
@click.option("--config", "config_path", type=click.Path(dir_okay=False), default=None,
              help="YAML settings file (default: config.yaml if present).")
@click.option("--verbose", is_flag=True, help="Debug logging on stderr.")
@click.pass_context
def cli(ctx: click.Context, config_path: Optional[str], verbose: bool):
    """Exact computations in towers of Hamel spaces."""
    settings = get_settings(config_path)
    configure_logging(settings.logging, verbose)
    ctx.ensure_object(dict)
    ctx.obj["settings"] = settings


# --- models ------------------------------------------------------------------


@cli.group()
def model():
    """Model files."""


def _sorted_generators(m: Model, order: int) -> List[str]:
    units = [(m.names[g], m.generator(g)) for g in range(m.size)]
    key = functools.cmp_to_key(lambda a, b: int(compare(m, a[1], b[1], order)))
    return [name for name, _ in sorted(units, key=key)]


@model.command("check")
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@engine_errors
def model_check(path: str):
    """Load a model file and summarize its generators and orders."""
    m = load_model(path)
    kinds = Counter(
        {FreeGen: "free", ValueGen: "value", BallGen: "ball"}[type(record)] for record in m.gens
    )
    summary = ", ".join(f"{count} {kind}" for kind, count in sorted(kinds.items()))
    click.echo(f"model {m.mode}: {m.size} generators" + (f" ({summary})" if summary else ""))
    for order in range(m.orders):
        click.echo(f"<{order}: " + " < ".join(_sorted_generators(m, order)))


# --- formulas ------------------------------------------------------------------


def _parse_assignments(m: Model, bindings: Tuple[str, ...]) -> Dict[str, Point]:
    assignment: Dict[str, Point] = {}
    for binding in bindings:
        for part in filter(None, (p.strip() for p in binding.split(";"))):
            name, sep, expression = part.partition("=")
            if not sep or not name.strip():
                raise ExpressionSyntaxError(f"expected 'name = expression', got '{part}'", part)
            assignment[name.strip()] = parse_point(m, expression)
    return assignment


@cli.command("eval")
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.option("-e", "--expression", "text", required=True, help="Formula to evaluate.")
@click.option("--assign", "bindings", multiple=True, help="Binding 'x = expr', repeatable.")
@click.option("--with-infinity", is_flag=True, help="Quantifiers also range over inf.")
@click.pass_context
@engine_errors
def eval_command(ctx: click.Context, path: str, text: str, bindings, with_infinity: bool):
    """Truth value of a formula in a model."""
    engine = _settings(ctx).engine
    m = load_model(path)
    f = parse_formula(text, orders=m.orders, valued=m.is_hamel)
    assignment = _parse_assignments(m, bindings)
    if is_quantifier_free(f):
        truth = evaluate_qf(TowerStructure(m, cross_check=engine.cross_check), f, assignment)
    else:
        domain = Domain.EXTENDED if with_infinity else engine.domain
        truth, _ = evaluate(m, f, assignment, domain)
    click.echo("true" if truth else "false")


@cli.command("qe")
@click.option("-k", "--orders", type=click.IntRange(1), default=2, show_default=True)
@click.option("-e", "--expression", "text", required=True, help="Formula without v(...).")
@click.option("--with-infinity", is_flag=True, help="Quantifiers also range over inf.")
@click.pass_context
@engine_errors
def qe_command(ctx: click.Context, orders: int, text: str, with_infinity: bool):
    """Equivalent quantifier-free formula."""
    domain = Domain.EXTENDED if with_infinity else _settings(ctx).engine.domain
    f = parse_formula(text, orders=orders, valued=False)
    click.echo(print_formula(qe(f, orders, domain)))


@cli.command("decide")
@click.option("-k", "--orders", type=click.IntRange(1), default=2, show_default=True)
@click.option("-e", "--expression", "text", required=True, help="Sentence without v(...).")
@click.option("--with-infinity", is_flag=True, help="Quantifiers also range over inf.")
@click.pass_context
@engine_errors
def decide_command(ctx: click.Context, orders: int, text: str, with_infinity: bool):
    """Truth value of a sentence in every model of the theory."""
    domain = Domain.EXTENDED if with_infinity else _settings(ctx).engine.domain
    f = parse_formula(text, orders=orders, valued=False)
    click.echo("true" if decide_sentence(f, orders, domain) else "false")


# --- witnesses ---------------------------------------------------------------


@cli.group()
def witness():
    """Extend a model by a witness element."""


def _interval(m: Model, ends: Optional[Tuple[str, str]]) -> Interval:
    if not ends:
        return UNBOUNDED
    return parse_bound(m, ends[0]), parse_bound(m, ends[1])


def _finish(m: Model, element, output: Optional[str]) -> None:
    click.echo(m.format(element))
    if output:
        save_model(m, output)


_MODEL = click.argument("path", type=click.Path(exists=True, dir_okay=False))
_OUTPUT = click.option("-o", "--output", type=click.Path(dir_okay=False), help="Write the extended model here.")
_LO = click.option("--lo", required=True, help="Lower end a, an element.")
_HI = click.option("--hi", required=True, help="Upper end b, an element.")
_IV0 = click.option("--iv0", nargs=2, default=None, metavar="LO HI", help="Interval in <0, ends may be -inf/+inf.")
_IV1 = click.option("--iv1", nargs=2, default=None, metavar="LO HI", help="Interval in <1, ends may be -inf/+inf.")


@witness.command("density")
@_MODEL
@_LO
@_HI
@_OUTPUT
@engine_errors
def witness_density(path: str, lo: str, hi: str, output: Optional[str]):
    """A value strictly between a and b in <0."""
    m = load_model(path)
    m, h = density_witness(m, term_to_vector(m, lo), term_to_vector(m, hi))
    _finish(m, m.generator(h), output)


@witness.command("densepair")
@_MODEL
@_LO
@_HI
@_OUTPUT
@engine_errors
def witness_densepair(path: str, lo: str, hi: str, output: Optional[str]):
    """An element of the generalized ball strictly between a and b in <0."""
    m = load_model(path)
    m, s = dense_pair_witness(m, term_to_vector(m, lo), term_to_vector(m, hi))
    _finish(m, s, output)


@witness.command("independence")
@_MODEL
@_IV0
@_IV1
@_OUTPUT
@engine_errors
def witness_independence(path: str, iv0, iv1, output: Optional[str]):
    """An element lying in one interval per order."""
    m = load_model(path)
    intervals = [_interval(m, iv0), _interval(m, iv1)][: m.orders]
    m, z = independence_witness(m, *intervals)
    _finish(m, z, output)


@witness.command("nonvalue")
@_MODEL
@_IV0
@_IV1
@_OUTPUT
@engine_errors
def witness_nonvalue(path: str, iv0, iv1, output: Optional[str]):
    """An element of both intervals that is not its own value."""
    m = load_model(path)
    m, z = nonvalue_witness(m, _interval(m, iv0), _interval(m, iv1))
    _finish(m, z, output)


# --- subspaces ---------------------------------------------------------------


@cli.command("values")
@_MODEL
@click.option("-e", "--expression", "text", required=True, help="Spanning elements separated by ';'.")
@engine_errors
def values_command(path: str, text: str):
    """Separated basis and value set of a finitely generated subspace."""
    m = load_model(path)
    vectors = [term_to_vector(m, part) for part in text.split(";") if part.strip()]
    click.echo("basis:")
    for b in separated_basis(m, vectors):
        click.echo(f"  {m.format(b)}")
    click.echo("values: " + ", ".join(m.format(h) for h in sorted_values(m, subspace_values(m, vectors))))


# --- lab -----------------------------------------------------------------------


@cli.group()
def lab():
    """Randomized property suites."""


@lab.command("run")
@click.argument("suite", type=click.Choice([*SUITES, "all"]))
@click.option("--trials", type=click.IntRange(1), default=None, help="Trials per suite.")
@click.option("--seed", type=click.IntRange(0, 2**64 - 1), default=None)
@click.option("--machine", is_flag=True, help="Line-oriented report.")
@click.pass_context
@engine_errors
def lab_run(ctx: click.Context, suite: str, trials: Optional[int], seed: Optional[int], machine: bool):
    """Run one suite, or all of them in registry order."""
    settings = _settings(ctx).lab
    names = list(SUITES) if suite == "all" else [suite]
    reports: List[Report] = [run_suite(settings.suite(name, trials, seed)) for name in names]
    for report in reports:
        click.echo(report.render_machine() if machine else report.render_text(), nl=False)
    if not all(report.passed for report in reports):
        sys.exit(EXIT_FAILURES)


if __name__ == "__main__":
    cli()
