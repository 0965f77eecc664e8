from contextlib import contextmanager
from typing import Dict, Iterator, List, Optional

from cmcopula.audit.event_handlers.base import EventHandler
from cmcopula.audit.events import Event, RunEnd, RunStart
from cmcopula.audit.spans import EventSpan


class EventTracker:
    """
    Container for event handlers, responsible for dispatching events to them.
    """

    _handlers: List[EventHandler]
    _run_contexts: Dict[EventHandler, Optional[object]]

    def __init__(self) -> None:
        self._handlers = []
        self._run_contexts = {}

    @classmethod
    def initialize_with_handlers(cls, event_handlers: List[EventHandler]) -> "EventTracker":
        """
        Initialize the tracker with a list of event handlers.

        Args:
            event_handlers: List of event handlers.

        Returns:
            The initialized tracker.

        Raises:
            ValueError: if invalid event handler object is passed as argument.
        """
        instance = cls()

        for handler in event_handlers:
            if not isinstance(handler, EventHandler):
                raise ValueError(f"Could not register {handler}. Handler must be instance of EventHandler type")
            instance.subscribe(handler)

        return instance

    @classmethod
    def resolve(cls, event_tracker: Optional["EventTracker"] = None) -> "EventTracker":
        """
        Returns the given tracker, or one built from the globally registered `cmcopula.event_handlers`.

        Args:
            event_tracker: Tracker passed by the caller.

        Returns:
            The tracker to report to.
        """
        if event_tracker is not None:
            return event_tracker

        import cmcopula  # pylint: disable=import-outside-toplevel,cyclic-import

        return cls.initialize_with_handlers(cmcopula.event_handlers)

    @property
    def handlers(self) -> List[EventHandler]:
        """
        Subscribed handlers, in subscription order.
        """
        return list(self._handlers)

    def subscribe(self, event_handler: EventHandler) -> None:
        """
        Add event handler to the tracker.

        Args:
            event_handler: Event handler to be added.
        """
        self._handlers.append(event_handler)

    def run_start(self, run: RunStart) -> None:
        """
        Notify all event handlers about run start.

        Args:
            run: The run start event.
        """
        for handler in self._handlers:
            self._run_contexts[handler] = handler.run_start(run)

    def run_end(self, run: RunEnd) -> None:
        """
        Notify all event handlers about run end.

        Args:
            run: The run end event.
        """
        for handler in self._handlers:
            handler.run_end(run, run_context=self._run_contexts.pop(handler, None))

    @contextmanager
    def track_event(self, event: Event) -> Iterator[EventSpan]:
        """
        Context manager for processing an event.

        Args:
            event: The event to be processed.

        Yields:
            Event span; call it with the completed event before leaving the block.
        """
        contexts = {}

        for handler in self._handlers:
            contexts[handler] = handler.event_start(event, run_context=self._run_contexts.get(handler))

        span = EventSpan()
        yield span
        elapsed = span.close()

        for handler in self._handlers:
            handler.event_end(
                span.data or event,
                run_context=self._run_contexts.get(handler),
                event_context=contexts[handler],
                elapsed=elapsed,
            )
