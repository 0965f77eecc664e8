import re
from typing import Optional

try:
    from rich.console import Console
    from rich.text import Text

    RICH_OUTPUT = True
except ImportError:
    RICH_OUTPUT = False

from cmcopula.audit.event_handlers.base import EventHandler
from cmcopula.audit.events import (
    ConsistencyEvent,
    Event,
    PricingEvent,
    RunEnd,
    RunStart,
    SimulationEvent,
    SolveEvent,
)

_RICH_FORMATING_PATTERN = r"\[/?[a-z0-9 ]*\]"
_VERDICT_COLOURS = {"pass": "green", "fail": "red", "not-applicable": "grey53"}


class CLIEventHandler(EventHandler[None, None]):
    """
    This handler prints every solve, simulation, consistency check and pricing step of a run to the
    terminal.

    ### Usage

    ```python
        import cmcopula
        from cmcopula.audit import CLIEventHandler

        cmcopula.event_handlers = [CLIEventHandler()]
        field = cmcopula.solve_forward(model)
    ```
    """

    def __init__(self) -> None:
        super().__init__()
        self._console = Console(record=True, highlight=False) if RICH_OUTPUT else None

    def _print_markup(self, content: str) -> None:
        if self._console:
            self._console.print(Text.from_markup(content))
        else:
            print(re.sub(_RICH_FORMATING_PATTERN, "", content))

    def run_start(self, run: RunStart) -> None:
        """
        Displays the command and its config.

        Args:
            run: Name of the command and the config it was started with.
        """
        config = f" [grey53]({run.config_path})" if run.config_path else ""
        self._print_markup(f"[orange3 bold]cmcopula {run.command}{config}")

    # pylint: disable=unused-argument
    def event_start(self, event: Event, run_context: None) -> None:
        """
        Displays the inputs of the operation that starts.

        Args:
            event: cmcopula event with the operation inputs.
            run_context: Unused.
        """
        if isinstance(event, SolveEvent):
            self._print_markup(
                f"[cyan bold]solve {event.direction} [grey53]method={event.method} d={event.dimension} "
                f"cells={event.cells}"
            )
        elif isinstance(event, SimulationEvent):
            self._print_markup(
                f"[cyan bold]simulate [grey53]paths={event.n_paths} seed={event.seed} blocks={event.blocks} "
                f"workers={event.workers}"
            )
        elif isinstance(event, ConsistencyEvent):
            self._print_markup(f"[cyan bold]check {event.condition} [grey53]component={event.component}")
        elif isinstance(event, PricingEvent):
            self._print_markup(f"[cyan bold]price {event.kind} [grey53]method={event.method}")

    # pylint: disable=unused-argument
    def event_end(self, event: Optional[Event], run_context: None, event_context: None, elapsed: float) -> None:
        """
        Displays the outcome of the finished operation.

        Args:
            event: cmcopula event with the operation outcome.
            run_context: Unused.
            event_context: Unused.
            elapsed: Wall time in seconds.
        """
        timing = f"[grey53]{elapsed:.3f}s"
        if isinstance(event, SolveEvent) and event.max_row_error is not None:
            self._print_markup(f"  [green]max row error {event.max_row_error:.2e} {timing}")
        elif isinstance(event, SimulationEvent) and event.jumps is not None:
            self._print_markup(f"  [green]{event.jumps} jumps {timing}")
        elif isinstance(event, ConsistencyEvent) and event.verdict is not None:
            colour = _VERDICT_COLOURS.get(event.verdict, "white")
            self._print_markup(f"  [{colour} bold]{event.verdict}[/] [grey53]witnesses={event.witnesses} {timing}")
        elif isinstance(event, PricingEvent) and event.strata is not None:
            self._print_markup(f"  [green]{event.strata} strata, {event.excluded or 0} excluded {timing}")
        else:
            self._print_markup(f"  {timing}")

    # pylint: disable=unused-argument
    def run_end(self, output: RunEnd, run_context: None) -> None:
        """
        Displays the exit code and the written artifacts.

        Args:
            output: Exit code and written artifacts.
            run_context: Unused.
        """
        colour = "green" if output.exit_code == 0 else "red"
        self._print_markup(f"[{colour} bold]{output.command} finished with exit code {output.exit_code}")
        for artifact in output.artifacts:
            self._print_markup(f"  [grey53]{artifact}")
