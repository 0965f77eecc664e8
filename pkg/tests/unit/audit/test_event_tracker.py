# pylint: disable=missing-docstring, missing-return-doc, missing-param-doc, disallowed-name, missing-return-type-doc

from typing import List, Optional

import pytest

import cmcopula
from cmcopula.audit import BufferEventHandler, EventHandler, EventTracker, RunEnd, RunStart, SimulationEvent
from cmcopula.audit.events import Event


class RecordingHandler(EventHandler[str, int]):
    def __init__(self) -> None:
        self.calls: List[tuple] = []

    def run_start(self, run: RunStart) -> str:
        self.calls.append(("run_start", run.command))
        return "run"

    def event_start(self, event: Event, run_context: Optional[str]) -> int:
        self.calls.append(("event_start", run_context))
        return 42

    def event_end(self, event: Optional[Event], run_context: Optional[str], event_context: int, elapsed: float) -> None:
        self.calls.append(("event_end", run_context, event_context, getattr(event, "jumps", None)))

    def run_end(self, output: RunEnd, run_context: Optional[str]) -> None:
        self.calls.append(("run_end", run_context, output.exit_code))


def test_contexts_are_passed_between_callbacks():
    handler = RecordingHandler()
    tracker = EventTracker.initialize_with_handlers([handler])

    tracker.run_start(RunStart(command="simulate"))
    event = SimulationEvent(n_paths=10, seed=1, blocks=1, workers=1)
    with tracker.track_event(event) as span:
        event.jumps = 3
        span(event)
    tracker.run_end(RunEnd(command="simulate", exit_code=0))

    assert handler.calls == [
        ("run_start", "simulate"),
        ("event_start", "run"),
        ("event_end", "run", 42, 3),
        ("run_end", "run", 0),
    ]


def test_span_measures_elapsed_time():
    tracker = EventTracker()

    with tracker.track_event(SimulationEvent(n_paths=1, seed=0, blocks=1, workers=1)) as span:
        pass

    assert span.elapsed is not None and span.elapsed >= 0.0


def test_only_event_handlers_can_subscribe():
    with pytest.raises(ValueError):
        EventTracker.initialize_with_handlers(["not a handler"])


def test_resolve_prefers_explicit_tracker(monkeypatch):
    handler = BufferEventHandler()
    monkeypatch.setattr(cmcopula, "event_handlers", [handler])
    explicit = EventTracker()

    assert EventTracker.resolve(explicit) is explicit
    assert EventTracker.resolve().handlers == [handler]


def test_buffer_handler_reports_run():
    handler = BufferEventHandler()
    tracker = EventTracker.initialize_with_handlers([handler])

    tracker.run_start(RunStart(command="check", config_path="model.json"))
    tracker.run_end(RunEnd(command="check", exit_code=1, artifacts=["out/report.json"]))

    output = handler.buffer.getvalue()
    assert "cmcopula check (model.json)" in output
    assert "check finished with exit code 1" in output
    assert "out/report.json" in output
