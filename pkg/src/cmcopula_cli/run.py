import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Tuple

import click
import numpy as np

from cmcopula.audit import EventTracker, RunEnd, RunStart
from cmcopula.chain.exceptions import GeneratorError
from cmcopula.config import (
    ConfigParseError,
    Tolerances,
    build_from_config,
    dump_model_config,
    load_candidate,
    load_pool,
    read_config,
    tolerances_from_config,
)
from cmcopula.consistency import Verdict, check_consistency
from cmcopula.copulae import validate_precopula
from cmcopula.exceptions import CmcError
from cmcopula.kolmogorov import solve_forward, state_distribution
from cmcopula.montecarlo import simulate
from cmcopula.premium import price
from cmcopula_cli.exceptions import FixtureFailedError
from cmcopula_cli.fixtures import FIXTURES, STOCHASTIC_FIXTURES, FixtureContext, fixture_names, resolve_fixture

logger = logging.getLogger(__name__)

COMMANDS = ("validate", "solve", "check", "build", "simulate", "price", "reproduce")
STOCHASTIC_COMMANDS = frozenset({"simulate", "price"})

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


@dataclass(frozen=True)
class RunConfig:
    """
    Everything one command needs.

    Args:
        command: Command name.
        config_path: JSON model config; unused by `reproduce`.
        out: Directory the artifacts are written to.
        seed: Seed of the stochastic commands.
        paths: Number of simulated paths.
        tol: Override of the structural tolerance.
        fixtures: Fixtures run by `reproduce`; all of them when empty.
    """

    command: str
    config_path: Optional[Path] = None
    out: Path = Path(".")
    seed: Optional[int] = None
    paths: int = 100_000
    tol: Optional[float] = None
    fixtures: Tuple[str, ...] = ()

    def check(self) -> None:
        """
        Validates the combination of options.

        Raises:
            ConfigParseError: If a required option is missing or a referenced file does not exist.
        """
        if self.command not in COMMANDS:
            raise ConfigParseError("<command line>", f"unknown command {self.command!r}")
        if self.command != "reproduce":
            if self.config_path is None:
                raise ConfigParseError("<command line>", f"`{self.command}` needs --config")
            if not Path(self.config_path).is_file():
                raise ConfigParseError(self.config_path, "file does not exist")
        unknown = sorted(set(self.fixtures) - set(fixture_names()))
        if unknown:
            raise ConfigParseError("<command line>", f"unknown fixtures {unknown}; known: {fixture_names()}")
        needs_seed = self.command in STOCHASTIC_COMMANDS or (
            self.command == "reproduce" and STOCHASTIC_FIXTURES & set(self.resolved_fixtures())
        )
        if needs_seed and self.seed is None:
            raise ConfigParseError("<command line>", f"`{self.command}` needs --seed")
        if self.paths <= 0:
            raise ConfigParseError("<command line>", "--paths must be positive")

    def resolved_fixtures(self) -> Tuple[str, ...]:
        """
        Fixtures to run with aliases resolved, in the order given and without repeats.

        Returns:
            Keys of FIXTURES; all of them when none were named.
        """
        names = self.fixtures or tuple(FIXTURES)
        return tuple(dict.fromkeys(resolve_fixture(name) for name in names))


@dataclass
class RunResult:
    """
    Exit code and the files a command wrote.
    """

    exit_code: int
    artifacts: List[Path] = field(default_factory=list)


def _write_json(path: Path, payload: Any) -> Path:
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return path


def _tolerances(config: RunConfig, base: Tolerances) -> Tolerances:
    return base if config.tol is None else base.override(structural=config.tol)


def _validate(config: RunConfig, _: EventTracker) -> RunResult:
    assert config.config_path is not None
    parsed = read_config(config.config_path)
    try:
        candidate = build_from_config(parsed)
    except GeneratorError as error:
        click.echo(f"invalid generator: {error}")
        return RunResult(EXIT_FAILED)
    click.echo(f"valid {candidate.kind.value} model on {candidate.model.dimension} states")
    return RunResult(EXIT_OK)


def _solve(config: RunConfig, tracker: EventTracker) -> RunResult:
    assert config.config_path is not None
    model = load_candidate(config.config_path).model
    solved = solve_forward(model, event_tracker=tracker)
    transitions = config.out / "transitions.csv"
    distribution = config.out / "distribution.csv"
    solved.to_frame(model.space).to_csv(transitions, index=False)
    state_distribution(model, solved).to_frame(model.space).to_csv(distribution, index=False)
    click.echo(f"solved {model.generator.n_cells} cells, max row error {solved.max_row_error():.3g}")
    return RunResult(EXIT_OK, [transitions, distribution])


def _check(config: RunConfig, tracker: EventTracker) -> RunResult:
    assert config.config_path is not None
    candidate = load_candidate(config.config_path)
    tolerances = _tolerances(config, tolerances_from_config(read_config(config.config_path)))
    model = candidate.model
    reports = [
        check_consistency(
            model,
            k,
            tol=tolerances.structural,
            support_eps=tolerances.support,
            target=None if candidate.spec is None else candidate.spec.targets[k].intensity,
            event_tracker=tracker,
        )
        for k in range(model.space.n_components)
    ]
    for report in reports:
        for condition, verdict in sorted(report.verdicts.items()):
            click.echo(f"{condition}: {verdict.value}")
        for witness in report.witnesses[:3]:
            click.echo(f"  {witness.describe()}")
    path = _write_json(config.out / "report.json", {"components": [report.to_dict() for report in reports]})
    failed = any(verdict == Verdict.FAIL for report in reports for verdict in report.verdicts.values())
    return RunResult(EXIT_FAILED if failed else EXIT_OK, [path])


def _build(config: RunConfig, _: EventTracker) -> RunResult:
    assert config.config_path is not None
    candidate = load_candidate(config.config_path)
    tolerances = _tolerances(config, tolerances_from_config(read_config(config.config_path)))
    verdict = validate_precopula(candidate, tol=tolerances.structural, weak_tol=tolerances.transition)
    for name, value in sorted({**verdict.strong, **verdict.weak}.items()):
        click.echo(f"{name}: {value.value}")
    model_path = _write_json(config.out / "model.json", dump_model_config(candidate.model, tolerances))
    candidate_path = _write_json(
        config.out / "candidate.json", {"candidate": candidate.to_dict(), "verdict": verdict.to_dict()}
    )
    passed = verdict.strong_passed or verdict.weak_passed
    return RunResult(EXIT_OK if passed else EXIT_FAILED, [model_path, candidate_path])


def _simulate(config: RunConfig, tracker: EventTracker) -> RunResult:
    assert config.config_path is not None and config.seed is not None
    model = load_candidate(config.config_path).model
    bundle = simulate(model, config.paths, config.seed, event_tracker=tracker)
    paths_csv = config.out / "paths.csv"
    bundle.to_csv(paths_csv)
    terminal = np.bincount(bundle.states_at(bundle.horizon), minlength=model.dimension) / bundle.n_paths
    summary = {
        "n_paths": bundle.n_paths,
        "seed": config.seed,
        "n_jumps": bundle.n_jumps,
        "horizon": bundle.horizon,
        "terminal_distribution": dict(zip(_labels(model.space.states()), terminal.tolist())),
    }
    summary_path = _write_json(config.out / "summary.json", summary)
    click.echo(f"simulated {bundle.n_paths} paths with {bundle.n_jumps} jumps")
    return RunResult(EXIT_OK, [paths_csv, summary_path])


def _price(config: RunConfig, tracker: EventTracker) -> RunResult:
    assert config.config_path is not None and config.seed is not None
    pool = load_pool(config.config_path)
    quote = price(pool, config.paths, config.seed, event_tracker=tracker)
    path = _write_json(config.out / "quote.json", quote.to_dict())
    click.echo(quote.table())
    return RunResult(EXIT_OK, [path])


def _reproduce(config: RunConfig, _: EventTracker) -> RunResult:
    context = FixtureContext(tolerances=_tolerances(config, Tolerances()), seed=config.seed, n_paths=config.paths)
    results = []
    for name in config.resolved_fixtures():
        logger.debug("Running fixture %s", name)
        try:
            result = FIXTURES[name](context)
        except (CmcError, ValueError, KeyError) as error:
            raise FixtureFailedError(name, str(error)) from error
        results.append(result)
        click.echo(f"[{'PASS' if result.passed else 'FAIL'}] {name}")
        for claim in result.claims:
            suffix = f" ({claim.detail})" if claim.detail else ""
            click.echo(f"  {'ok' if claim.passed else 'FAILED'}: {claim.claim}{suffix}")
    passed = all(result.passed for result in results)
    path = _write_json(
        config.out / "reproduce.json", {"passed": passed, "fixtures": [result.to_dict() for result in results]}
    )
    return RunResult(EXIT_OK if passed else EXIT_FAILED, [path])


def _labels(states: Any) -> List[str]:
    return ["(" + ",".join(str(c) for c in state) + ")" for state in states]


PIPELINES: Dict[str, Callable[[RunConfig, EventTracker], RunResult]] = {
    "validate": _validate,
    "solve": _solve,
    "check": _check,
    "build": _build,
    "simulate": _simulate,
    "price": _price,
    "reproduce": _reproduce,
}


def run(config: RunConfig, event_tracker: Optional[EventTracker] = None) -> RunResult:
    """
    Executes one command, reporting its start and end to the event tracker.

    Parse and usage errors end with exit code 2, failed verdicts and fixtures with 1.

    Args:
        config: The command and its options.
        event_tracker: Tracker notified about the run; built from `cmcopula.event_handlers` when omitted.

    Returns:
        Exit code and written artifacts.
    """
    tracker = EventTracker.resolve(event_tracker)
    tracker.run_start(RunStart(command=config.command, config_path=_optional_str(config.config_path)))
    try:
        config.check()
        config.out.mkdir(parents=True, exist_ok=True)
        result = PIPELINES[config.command](config, tracker)
    except ConfigParseError as error:
        click.echo(f"error: {error}", err=True)
        result = RunResult(EXIT_USAGE)
    except FixtureFailedError as error:
        click.echo(f"error: {error}", err=True)
        result = RunResult(EXIT_FAILED)
    except CmcError as error:
        click.echo(f"error: {error}", err=True)
        result = RunResult(EXIT_FAILED)
    tracker.run_end(
        RunEnd(command=config.command, exit_code=result.exit_code, artifacts=[str(a) for a in result.artifacts])
    )
    return result


def _optional_str(path: Optional[Path]) -> Optional[str]:
    return None if path is None else str(path)
