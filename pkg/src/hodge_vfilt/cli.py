"""Command-line interface for hodge_vfilt.

Usage:
    vf bfun --vars x,y --f "x^2 + y^3"
    vf annfs --vars x --f "x^3"
    vf vmember --vars x,y --f "x^2 + y^3" --element "1" --alpha 5/6
    vf hmi --vars x,y --f "x^2 + y^3" --k 2 --alpha 11/12 --deg-bound 6
    vf hodge --vars x,y --f "x^2 + y^3" --k 2 --alpha 11/12
    vf walls --vars x,y --f "x^2 + y^3" --k 0 --lo 0 --hi 1
    vf leftcont --vars x,y --f "x^2 + y^3" --k 2 --alpha 9/10
    vf family-limit --gens "x^3; x^2*y^2; x*y^3; y^4 - (2*beta+1)*x^2*y"
    vf thm12-check --vars x,y --f "x^2 + y^3" --k 2 --alpha 11/12
    vf verify --vars x,y,z --f "x^2 + y^2 + z^2" --k 1 --alpha 1 --claimed "x; y; z"
    vf strictness --vars x --f x --k 1 --alpha 1
    vf divisor --vars x,y --f "x^2 + y^3" --k 2 --alpha 5/6 --deg-bound 6
    vf multiplier --vars x,y --f "x^2 + y^3" --alpha 9/10
    vf ordinary -m 2 -n 3
    vf selftest --quick

Exit codes: 0 success, 1 refuted or failed check, 2 usage error,
3 resource budget exceeded.
"""

from __future__ import annotations

import functools
from collections.abc import Callable
from pathlib import Path
from typing import Any

import click

from hodge_vfilt import __version__
from hodge_vfilt.cli_handlers import commands
from hodge_vfilt.cli_handlers.report import Report, emit
from hodge_vfilt.cli_handlers.selftest import display_results, load_corpus, run_corpus
from hodge_vfilt.config import FORMATS, ORDERS, Settings
from hodge_vfilt.errors import (
    BudgetExceeded,
    HodgeVfiltError,
    ParseError,
    ReservedVariable,
)
from hodge_vfilt.polyalg.rationals import to_rational
from hodge_vfilt.utils.logging import make_logger, setup_logging

logger = make_logger(__name__)

EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


def _rational(ctx: click.Context, param: click.Parameter, value: str | None) -> Any:
    """Validate a p/q option value (kept as text for the report)."""
    if value is None:
        return None
    try:
        to_rational(value)
    except (TypeError, ValueError) as e:
        raise click.BadParameter(str(e)) from e
    return value


def _settings(ctx: click.Context, **overrides: Any) -> Settings:
    settings: Settings = ctx.obj["settings"]
    try:
        return settings.override(**overrides)
    except ValueError as e:
        raise click.UsageError(str(e)) from e


def _session(ctx: click.Context, variables: str, f: str, **overrides: Any) -> commands.Session:
    try:
        return commands.Session.create(variables, f, _settings(ctx, **overrides))
    except (ParseError, ReservedVariable, ValueError) as e:
        raise click.UsageError(str(e)) from e


def _finish(ctx: click.Context, run: Callable[[], Report]) -> None:
    """Run a computation, print its report and map the outcome to an exit code."""
    try:
        report = run()
    except (ParseError, ReservedVariable) as e:
        raise click.UsageError(str(e)) from e
    except BudgetExceeded as e:
        click.echo(f"Error: budget exceeded: {e}", err=True)
        ctx.exit(EXIT_BUDGET)
    except HodgeVfiltError as e:
        click.echo(f"Error: {e}", err=True)
        ctx.exit(EXIT_FAILED)
    except ValueError as e:
        raise click.UsageError(str(e)) from e

    settings: Settings = ctx.obj["settings"]
    emit(report, settings.output_format, ctx.obj["out"])
    if report.passed is False:
        ctx.exit(EXIT_FAILED)


def hypersurface_options(func: Callable[..., Any]) -> Callable[..., Any]:
    """--vars and --f, shared by every command that works with one f."""

    @click.option("--vars", "variables", required=True, help="Comma separated variables, e.g. x,y")
    @click.option("--f", "f", required=True, help='The polynomial f, e.g. "x^2 + y^3"')
    @functools.wraps(func)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        return func(*args, **kwargs)

    return wrapper


def window_options(func: Callable[..., Any]) -> Callable[..., Any]:
    """--k, --alpha, --deg-bound and --tail-deg for window computations."""

    @click.option("--k", "k", type=click.IntRange(min=0), required=True, help="Hodge level k")
    @click.option("--alpha", required=True, callback=_rational, help="Rational alpha, e.g. 5/6")
    @click.option("--deg-bound", type=click.IntRange(min=0), default=None, help="Degree bound d of leading coefficients")
    @click.option("--tail-deg", type=click.IntRange(min=0), default=None, help="Degree bound of tails (default: d + deg f)")
    @functools.wraps(func)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        return func(*args, **kwargs)

    return wrapper


@click.group()
@click.version_option(__version__, prog_name="vf")
@click.option(
    "--log-level",
    default="warning",
    help="Log level (debug, info, warning, error)",
)
@click.option(
    "--config",
    "config_path",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    default=None,
    help="YAML settings file (order, format, deg_bound, tail_deg, budget)",
)
@click.option("--format", "output_format", type=click.Choice(FORMATS), default=None, help="Output format (default: json)")
@click.option("--order", type=click.Choice(ORDERS), default=None, help="Term order of reported generators")
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), default=None, help="Write the report to FILE")
@click.option("--budget", type=click.IntRange(min=1), default=None, help="Cap on Gröbner S-pairs per computation")
@click.pass_context
def main(
    ctx: click.Context,
    log_level: str,
    config_path: Path | None,
    output_format: str | None,
    order: str | None,
    out: Path | None,
    budget: int | None,
) -> None:
    """Exact b-functions, V-filtrations and Hodge ideals of hypersurfaces.

    Polynomials use the grammar  expr := term (('+'|'-') term)*,
    term := factor ('*' factor)*, factor := rational | var | (expr) | factor^n,
    with rationals written p/q.

    Examples:

        # Bernstein-Sato polynomial of the cusp, with certificate
        vf bfun --vars x,y --f "x^2 + y^3"

        # Higher multiplier ideal of the cusp at level 2
        vf hmi --vars x,y --f "x^2 + y^3" --k 2 --alpha 11/12 --deg-bound 6
    """
    try:
        setup_logging(log_level, logger)
    except ValueError as e:
        raise click.BadParameter(str(e), param_hint="--log-level") from e

    try:
        settings = Settings.from_yaml(config_path) if config_path else Settings()
        settings = settings.override(order=order, output_format=output_format, max_pairs=budget)
    except ValueError as e:
        raise click.UsageError(str(e)) from e

    ctx.ensure_object(dict)
    ctx.obj["settings"] = settings
    ctx.obj["out"] = out


@main.command()
@hypersurface_options
@click.option("--certify/--no-certify", default=True, help="Search for the functional-equation operator")
@click.pass_context
def bfun(ctx: click.Context, variables: str, f: str, certify: bool) -> None:
    """Bernstein-Sato polynomial b_f(s) with its certificate."""
    session = _session(ctx, variables, f)
    _finish(ctx, lambda: commands.run_bfun(session, certify=certify))


@main.command()
@hypersurface_options
@click.pass_context
def annfs(ctx: click.Context, variables: str, f: str) -> None:
    """Generators of Ann(f^s) in D_n[s]."""
    session = _session(ctx, variables, f)
    _finish(ctx, lambda: commands.run_annfs(session))


@main.command()
@hypersurface_options
@click.option("--element", required=True, help='Coefficients of dt^0, dt^1, ... as "g0; g1; ..."')
@click.option("--alpha", required=True, callback=_rational, help="Rational alpha")
@click.option(
    "--method",
    type=click.Choice(["auto", "bfunction", "projection"]),
    default="auto",
    help="How to decide membership",
)
@click.option("--params", default=None, help="Parameters appearing linearly in the element, e.g. c1,c2")
@click.pass_context
def vmember(
    ctx: click.Context,
    variables: str,
    f: str,
    element: str,
    alpha: str,
    method: str,
    params: str | None,
) -> None:
    """Decide whether sum g_l dt^l delta lies in V^alpha and V^>alpha."""
    session = _session(ctx, variables, f)
    _finish(
        ctx,
        lambda: commands.run_vmember(session, element=element, alpha=alpha, method=method, params=params),
    )


def _read_claim(path: Path | None) -> str | None:
    if path is None:
        return None
    lines = [line.split("#", 1)[0].strip() for line in path.read_text().splitlines()]
    return "; ".join(line for line in lines if line)


@main.command()
@hypersurface_options
@window_options
@click.option(
    "--verify",
    "verify_path",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    default=None,
    help="File of claimed generators (one per line or ';' separated) to check",
)
@click.pass_context
def hmi(
    ctx: click.Context,
    variables: str,
    f: str,
    k: int,
    alpha: str,
    deg_bound: int | None,
    tail_deg: int | None,
    verify_path: Path | None,
) -> None:
    """Higher multiplier ideal of level k at alpha, inside a window."""
    session = _session(ctx, variables, f, deg_bound=deg_bound, tail_deg=tail_deg)
    claimed = _read_claim(verify_path)
    _finish(ctx, lambda: commands.run_hmi(session, k=k, alpha=alpha, claimed=claimed))


@main.command()
@hypersurface_options
@window_options
@click.pass_context
def hodge(
    ctx: click.Context,
    variables: str,
    f: str,
    k: int,
    alpha: str,
    deg_bound: int | None,
    tail_deg: int | None,
) -> None:
    """Hodge ideal I_k(alpha D), inside a window."""
    session = _session(ctx, variables, f, deg_bound=deg_bound, tail_deg=tail_deg)
    _finish(ctx, lambda: commands.run_hodge(session, k=k, alpha=alpha))


@main.command()
@hypersurface_options
@click.option("--k", "k", type=click.IntRange(min=0), required=True, help="Hodge level k")
@click.option("--lo", required=True, callback=_rational, help="Left end of the range (excluded)")
@click.option("--hi", required=True, callback=_rational, help="Right end of the range (included)")
@click.option("--deg-bound", type=click.IntRange(min=0), default=None)
@click.option("--tail-deg", type=click.IntRange(min=0), default=None)
@click.pass_context
def walls(
    ctx: click.Context,
    variables: str,
    f: str,
    k: int,
    lo: str,
    hi: str,
    deg_bound: int | None,
    tail_deg: int | None,
) -> None:
    """Jumping walls of the higher multiplier ideal on (lo, hi]."""
    session = _session(ctx, variables, f, deg_bound=deg_bound, tail_deg=tail_deg)
    _finish(ctx, lambda: commands.run_walls(session, k=k, lo=lo, hi=hi))


@main.command()
@hypersurface_options
@window_options
@click.pass_context
def leftcont(
    ctx: click.Context,
    variables: str,
    f: str,
    k: int,
    alpha: str,
    deg_bound: int | None,
    tail_deg: int | None,
) -> None:
    """Left continuity of I_k at alpha against the higher multiplier ideal."""
    session = _session(ctx, variables, f, deg_bound=deg_bound, tail_deg=tail_deg)
    _finish(ctx, lambda: commands.run_leftcont(session, k=k, alpha=alpha))


@main.command("family-limit")
@click.option(
    "--vars",
    "variables",
    default=None,
    help="Comma separated variables (default: every name in --gens except beta)",
)
@click.option("--gens", required=True, help='Generators in beta and the variables, "g1; g2; ..."')
@click.option("--points", default="", help="Rational beta values to take fibers at, e.g. 2,3,5/6")
@click.pass_context
def family_limit(ctx: click.Context, variables: str | None, gens: str, points: str) -> None:
    """Extend a beta-family over P^1 and take its flat limit at infinity."""
    settings = _settings(ctx)
    _finish(
        ctx,
        lambda: commands.run_family_limit(variables, gens, points, settings=settings),
    )


@main.command("limit-check")
@hypersurface_options
@window_options
@click.pass_context
def limit_check(
    ctx: click.Context,
    variables: str,
    f: str,
    k: int,
    alpha: str,
    deg_bound: int | None,
    tail_deg: int | None,
) -> None:
    """Check that the limit of I_k(beta D) at beta = oo is the higher multiplier ideal."""
    session = _session(ctx, variables, f, deg_bound=deg_bound, tail_deg=tail_deg)
    _finish(ctx, lambda: commands.run_limit_check(session, k=k, alpha=alpha))


main.add_command(limit_check, "thm12-check")


@main.command()
@hypersurface_options
@window_options
@click.option("--claimed", default=None, help='Claimed generators, "g1; g2; ..."')
@click.option(
    "--verify",
    "verify_path",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    default=None,
    help="File of claimed generators",
)
@click.pass_context
def verify(
    ctx: click.Context,
    variables: str,
    f: str,
    k: int,
    alpha: str,
    deg_bound: int | None,
    tail_deg: int | None,
    claimed: str | None,
    verify_path: Path | None,
) -> None:
    """Machine-check a claimed higher multiplier ideal inside a window."""
    claim = claimed if claimed is not None else _read_claim(verify_path)
    if claim is None:
        raise click.UsageError("give the claim with --claimed or --verify FILE")
    session = _session(ctx, variables, f, deg_bound=deg_bound, tail_deg=tail_deg)
    _finish(ctx, lambda: commands.run_verify(session, k=k, alpha=alpha, claimed=claim))


@main.command()
@hypersurface_options
@window_options
@click.pass_context
def strictness(
    ctx: click.Context,
    variables: str,
    f: str,
    k: int,
    alpha: str,
    deg_bound: int | None,
    tail_deg: int | None,
) -> None:
    """Window checks of the s + alpha / ev exact sequence at level k."""
    session = _session(ctx, variables, f, deg_bound=deg_bound, tail_deg=tail_deg)
    _finish(ctx, lambda: commands.run_strictness(session, k=k, alpha=alpha))


@main.command()
@hypersurface_options
@window_options
@click.pass_context
def divisor(
    ctx: click.Context,
    variables: str,
    f: str,
    k: int,
    alpha: str,
    deg_bound: int | None,
    tail_deg: int | None,
) -> None:
    """Compare I_k(alpha D) with the higher multiplier ideal modulo f."""
    session = _session(ctx, variables, f, deg_bound=deg_bound, tail_deg=tail_deg)
    _finish(ctx, lambda: commands.run_divisor(session, k=k, alpha=alpha))


@main.command()
@hypersurface_options
@click.option("--alpha", required=True, callback=_rational, help="Rational alpha > 0, e.g. 5/6")
@click.option("--deg-bound", type=click.IntRange(min=0), default=None)
@click.pass_context
def multiplier(
    ctx: click.Context, variables: str, f: str, alpha: str, deg_bound: int | None
) -> None:
    """Multiplier ideal J((alpha - eps) D) from delta-translate membership."""
    session = _session(ctx, variables, f, deg_bound=deg_bound)
    _finish(ctx, lambda: commands.run_multiplier(session, alpha=alpha))


@main.command()
@click.option("--multiplicity", "-m", type=click.IntRange(min=2), required=True)
@click.option("--dimension", "-n", type=click.IntRange(min=1), required=True)
@click.pass_context
def ordinary(ctx: click.Context, multiplicity: int, dimension: int) -> None:
    """Check the predicted ideals of x_1^m + ... + x_n^m."""
    settings = _settings(ctx)
    _finish(ctx, lambda: commands.run_ordinary(multiplicity, dimension, settings=settings))


@main.command()
@click.option("--quick", is_flag=True, help="Only run the entries marked quick")
@click.option("--only", default=None, help="Run a single entry by name")
@click.option(
    "--corpus",
    "corpus_path",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    default=None,
    help="Corpus YAML (default: the bundled one)",
)
@click.pass_context
def selftest(ctx: click.Context, quick: bool, only: str | None, corpus_path: Path | None) -> None:
    """Run the bundled corpus of known results."""
    try:
        entries = load_corpus(corpus_path)
        results = run_corpus(entries, quick=quick, only=only, settings=ctx.obj["settings"])
    except ValueError as e:
        raise click.UsageError(str(e)) from e
    display_results(results)
    if not all(r.passed for r in results):
        ctx.exit(EXIT_FAILED)


if __name__ == "__main__":
    main()
