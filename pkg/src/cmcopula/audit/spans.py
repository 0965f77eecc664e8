import time
from typing import Optional

from cmcopula.audit.events import Event


class EventSpan:
    """
    Collects the final state of a tracked event and the wall time it took.

    The tracked operation reports its completed event by calling the span; handlers receive that
    event in `event_end`, or the original one when nothing was reported.
    """

    def __init__(self) -> None:
        self.data: Optional[Event] = None
        self._started = time.perf_counter()
        self.elapsed: Optional[float] = None

    def __call__(self, data: Event) -> None:
        """
        Records the completed event.

        Args:
            data: Event with its outcome fields filled in.
        """
        self.data = data

    def close(self) -> float:
        """
        Stops the clock.

        Returns:
            Seconds since the span was opened.
        """
        self.elapsed = time.perf_counter() - self._started
        return self.elapsed
