import logging
import sys
from pathlib import Path
from typing import Any, Callable, Optional, Tuple

import click
from click import BadParameter, Context, Option
from dotenv import load_dotenv

import cmcopula
from cmcopula.audit import CLIEventHandler, EventTracker
from cmcopula_cli.fixtures import fixture_names
from cmcopula_cli.run import RunConfig, run


def validate_tol(_ctx: Context, _param: Option, value: Optional[float]) -> Optional[float]:
    """
    Validate the tolerance override.

    Args:
        value: The value of the option.

    Returns:
        The validated tolerance.
    """
    if value is not None and value <= 0:
        raise BadParameter("tolerance must be positive.")
    return value


def validate_seed(_ctx: Context, _param: Option, value: Optional[int]) -> Optional[int]:
    """
    Validate the seed.

    Args:
        value: The value of the option.

    Returns:
        The validated seed.
    """
    if value is not None and value < 0:
        raise BadParameter("seed must be a non-negative integer.")
    return value


def _options(function: Callable[..., Any]) -> Callable[..., Any]:
    decorators = [
        click.option("--config", "config_path", type=click.Path(path_type=Path), help="JSON model config."),
        click.option("--out", type=click.Path(file_okay=False, path_type=Path), default=Path("."), show_default=True),
        click.option("--seed", type=int, callback=validate_seed, help="Seed of the random streams."),
        click.option("--paths", type=click.IntRange(min=1), default=100_000, show_default=True),
        click.option("--tol", type=float, callback=validate_tol, help="Structural tolerance override."),
    ]
    for decorator in reversed(decorators):
        function = decorator(function)
    return function


def _execute(ctx: Context, command: str, fixtures: Tuple[str, ...] = (), **options: Any) -> None:
    config = RunConfig(command=command, fixtures=fixtures, **options)
    tracker = EventTracker.initialize_with_handlers(cmcopula.event_handlers)
    if ctx.obj.get("verbose"):
        tracker.subscribe(CLIEventHandler())
    result = run(config, tracker)
    for artifact in result.artifacts:
        logging.getLogger(__name__).info("wrote %s", artifact)
    ctx.exit(result.exit_code)


@click.group()
@click.option("--verbose", "-v", is_flag=True, help="Print progress events and debug logs.")
@click.pass_context
def cli(ctx: Context, verbose: bool) -> None:
    """
    Command line tool for conditional Markov chains and their copulae.
    """
    load_dotenv()
    logging.basicConfig(level=logging.DEBUG if verbose else logging.WARNING, stream=sys.stderr)
    ctx.ensure_object(dict)
    ctx.obj["verbose"] = verbose


@cli.command()
@_options
@click.pass_context
def validate(ctx: Context, **options: Any) -> None:
    """
    Check that a config describes a valid model.
    """
    _execute(ctx, "validate", **options)


@cli.command()
@_options
@click.pass_context
def solve(ctx: Context, **options: Any) -> None:
    """
    Solve the forward Kolmogorov equation and write transition and distribution CSVs.
    """
    _execute(ctx, "solve", **options)


@cli.command()
@_options
@click.pass_context
def check(ctx: Context, **options: Any) -> None:
    """
    Check strong and weak Markovian consistency of every component.
    """
    _execute(ctx, "check", **options)


@cli.command()
@_options
@click.pass_context
def build(ctx: Context, **options: Any) -> None:
    """
    Build the copula a config describes and validate its pre-copula conditions.
    """
    _execute(ctx, "build", **options)


@cli.command("simulate")
@_options
@click.pass_context
def simulate_command(ctx: Context, **options: Any) -> None:
    """
    Simulate sample paths and write them as CSV.
    """
    _execute(ctx, "simulate", **options)


@cli.command("price")
@_options
@click.pass_context
def price_command(ctx: Context, **options: Any) -> None:
    """
    Price the insurance pool of a config by simulation.
    """
    _execute(ctx, "price", **options)


@cli.command()
@click.argument("fixtures", nargs=-1, type=click.Choice(fixture_names()))
@_options
@click.pass_context
def reproduce(ctx: Context, fixtures: Tuple[str, ...], **options: Any) -> None:
    """
    Run reproduction fixtures (all of them by default) and print a pass/fail summary.
    """
    _execute(ctx, "reproduce", fixtures=fixtures, **options)
