from .event_handlers.base import EventHandler
from .event_handlers.buffer_event_handler import BufferEventHandler
from .event_handlers.cli_event_handler import CLIEventHandler
from .event_handlers.otel_event_handler import OtelEventHandler
from .event_tracker import EventTracker
from .events import ConsistencyEvent, Event, PricingEvent, RunEnd, RunStart, SimulationEvent, SolveEvent
from .spans import EventSpan

__all__ = [
    "BufferEventHandler",
    "CLIEventHandler",
    "ConsistencyEvent",
    "Event",
    "EventHandler",
    "EventSpan",
    "EventTracker",
    "OtelEventHandler",
    "PricingEvent",
    "RunEnd",
    "RunStart",
    "SimulationEvent",
    "SolveEvent",
]
