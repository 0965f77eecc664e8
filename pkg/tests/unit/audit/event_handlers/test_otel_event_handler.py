# pylint: disable=missing-docstring, missing-return-doc, missing-param-doc, disallowed-name, missing-return-type-doc

from typing import Dict, Mapping, Optional, Union

import pytest
from opentelemetry import trace
from opentelemetry.trace import Span, StatusCode
from opentelemetry.util.types import AttributeValue

from cmcopula.audit import EventTracker, OtelEventHandler, RunEnd, RunStart
from cmcopula.audit.event_handlers.otel_event_handler import SpanHandler
from cmcopula.audit.events import Event
from cmcopula.kolmogorov import solve_forward
from tests.unit.fixtures import two_state_model


class MockSpan(Span):
    def __init__(self) -> None:
        super().__init__()
        self.attributes: Dict[str, AttributeValue] = {}
        self.status = StatusCode.UNSET
        self.description: Optional[str] = None
        self.is_finished = False

    def end(self, end_time: Optional[int] = None) -> None:
        self.is_finished = True

    def get_span_context(self) -> trace.SpanContext:
        return trace.INVALID_SPAN_CONTEXT

    def set_attributes(self, attributes: Dict[str, AttributeValue]) -> None:
        self.attributes.update(attributes)

    def set_attribute(self, key: str, value: AttributeValue) -> None:
        self.attributes[key] = value

    def add_event(
        self, name: str, attributes: Optional[Mapping[str, AttributeValue]] = None, timestamp: Optional[int] = None
    ) -> None:
        raise NotImplementedError

    def update_name(self, name: str) -> None:
        raise NotImplementedError

    def is_recording(self) -> bool:
        return True

    def set_status(self, status: Union[trace.Status, StatusCode], description: Optional[str] = None) -> None:
        self.status = status.status_code if isinstance(status, trace.Status) else status
        self.description = description

    def record_exception(
        self,
        exception: BaseException,
        attributes: Optional[Mapping[str, AttributeValue]] = None,
        timestamp: Optional[int] = None,
        escaped: bool = False,
    ) -> None:
        raise NotImplementedError


@pytest.mark.parametrize(
    "record_inputs, record_outputs, expected",
    [
        (True, True, {"cmcopula.run.command": "solve", "seed": 7, "jumps": 12}),
        (False, True, {"cmcopula.run.command": "solve", "jumps": 12}),
        (True, False, {"cmcopula.run.command": "solve", "seed": 7}),
    ],
)
def test_span_handler_respects_recording_flags(record_inputs, record_outputs, expected):
    span = MockSpan()

    handler = SpanHandler(span, record_inputs=record_inputs, record_outputs=record_outputs)
    handler.set("cmcopula.run.command", "solve").set_input("seed", 7).set_output("jumps", 12)
    handler.end_successfully()

    assert span.attributes == expected
    assert span.status == StatusCode.OK
    assert span.is_finished


def test_span_handler_skips_missing_values_and_transforms():
    span = MockSpan()

    handler = SpanHandler(span, record_inputs=True, record_outputs=True)
    handler.set("verdict", None)
    handler.set_output("artifacts", ["a.csv", "b.csv"], transform=len)
    handler.set_input("seed", -1, transform=lambda seed: None if seed < 0 else seed)

    assert span.attributes == {"artifacts": 2}


def test_span_handler_reports_errors():
    span = MockSpan()

    SpanHandler(span, record_inputs=True, record_outputs=True).end_with_error("exit code 1")

    assert span.status == StatusCode.ERROR
    assert span.description == "exit code 1"
    assert span.is_finished


def test_failed_run_ends_with_error():
    handler = OtelEventHandler()
    span = MockSpan()

    handler.run_end(RunEnd(command="check", exit_code=1), SpanHandler(span, True, True))

    assert span.status == StatusCode.ERROR
    assert span.attributes["cmcopula.run.exit-code"] == 1


def test_handler_traces_a_solve():
    tracker = EventTracker.initialize_with_handlers([OtelEventHandler()])

    tracker.run_start(RunStart(command="solve"))
    solve_forward(two_state_model(), event_tracker=tracker)
    tracker.run_end(RunEnd(command="solve", exit_code=0))


def test_unknown_events_are_rejected():
    class StrayEvent(Event):
        pass

    with pytest.raises(ValueError):
        OtelEventHandler().event_start(StrayEvent(), None)
