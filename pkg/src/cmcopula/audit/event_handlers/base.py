import abc
from abc import ABC
from typing import Generic, Optional, TypeVar

from cmcopula.audit.events import Event, RunEnd, RunStart

RunCtx = TypeVar("RunCtx")
EventCtx = TypeVar("EventCtx")


class EventHandler(Generic[RunCtx, EventCtx], ABC):
    """
    A base class that every custom handler should inherit from.
    """

    @abc.abstractmethod
    def run_start(self, run: RunStart) -> RunCtx:
        """
        Called at the beginning of a command run.

        Args:
            run: Name of the command and the config it was started with.

        Returns:
            Implementation-specific run context object, which is passed to the future callbacks.
        """

    @abc.abstractmethod
    def event_start(self, event: Event, run_context: Optional[RunCtx]) -> EventCtx:
        """
        Called when a tracked operation starts.

        Args:
            event: cmcopula event with the operation inputs.
            run_context: Context returned by `run_start`, None outside of a run.

        Returns:
            Implementation-specific event context object, which is passed to the `event_end` callback.
        """

    @abc.abstractmethod
    def event_end(
        self, event: Optional[Event], run_context: Optional[RunCtx], event_context: EventCtx, elapsed: float
    ) -> None:
        """
        Called when a tracked operation finishes.

        Args:
            event: cmcopula event with the operation outcome.
            run_context: Context returned by `run_start`, None outside of a run.
            event_context: Context returned by `event_start`.
            elapsed: Wall time of the operation in seconds.
        """

    @abc.abstractmethod
    def run_end(self, output: RunEnd, run_context: Optional[RunCtx]) -> None:
        """
        Called at the end of a command run.

        Args:
            output: Exit code and written artifacts.
            run_context: Context returned by `run_start`.
        """
