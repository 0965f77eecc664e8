from dataclasses import dataclass
from typing import Any, Callable, Optional

from opentelemetry import trace
from opentelemetry.trace import Span, SpanKind, StatusCode, TracerProvider
from opentelemetry.util.types import AttributeValue

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

TRACER_NAME = "cmcopula.events"

TransformFn = Optional[Callable[[Any], Optional[AttributeValue]]]


@dataclass
class SpanHandler:
    """Wraps a span and records the attributes that the handler flags allow"""

    span: Span
    record_inputs: bool
    record_outputs: bool

    def set(self, key: str, value: Optional[Any], transform: TransformFn = None) -> "SpanHandler":
        """
        Sets a span attribute if the value exists.

        Args:
            key: attribute name
            value: value to record; skipped when None
            transform: optional function converting the value to a valid OpenTelemetry attribute type

        Returns:
            self, for chaining calls
        """
        value = value if transform is None else transform(value)
        if value is not None:
            self.span.set_attribute(key, value)

        return self

    def set_input(self, key: str, value: Optional[Any], transform: TransformFn = None) -> "SpanHandler":
        """
        Sets an operation input as span attribute, unless inputs are not recorded.

        Args:
            key: attribute name
            value: operation input; skipped when None or when inputs are not recorded
            transform: optional function converting the value to a valid OpenTelemetry attribute type

        Returns:
            self, for chaining calls
        """
        if self.record_inputs:
            self.set(key, value, transform)
        return self

    def set_output(self, key: str, value: Optional[Any], transform: TransformFn = None) -> "SpanHandler":
        """
        Sets an operation outcome as span attribute, unless outputs are not recorded.

        Args:
            key: attribute name
            value: operation outcome; skipped when None or when outputs are not recorded
            transform: optional function converting the value to a valid OpenTelemetry attribute type

        Returns:
            self, for chaining calls
        """
        if self.record_outputs:
            self.set(key, value, transform)
        return self

    def end_successfully(self) -> None:
        """Marks the span as successful and closes it"""
        self.span.set_status(StatusCode.OK)
        self.span.end()

    def end_with_error(self, description: str) -> None:
        """
        Sets status of the span to ERROR and ends the span with current time.

        Args:
            description: Reason of the failure.
        """
        self.span.set_status(StatusCode.ERROR, description)
        self.span.end()


class OtelEventHandler(EventHandler[SpanHandler, SpanHandler]):
    """
    Emits one OpenTelemetry span per command run and one child span per solve, simulation, check or pricing.
    """

    def __init__(
        self, provider: Optional[TracerProvider] = None, record_inputs: bool = True, record_outputs: bool = True
    ) -> None:
        """
        Initialize OtelEventHandler. By default, it will try to use globally configured TracerProvider.

        Args:
            provider: Optional tracer provider. By default global provider is used.
            record_inputs: if true (default) operation inputs such as seeds and path counts are recorded.
            record_outputs: if true (default) operation outcomes such as verdicts and jump counts are recorded.
        """
        self.record_inputs = record_inputs
        self.record_outputs = record_outputs
        if provider is None:
            self.tracer = trace.get_tracer(TRACER_NAME)
        else:
            self.tracer = provider.get_tracer(TRACER_NAME)

    def _handle_span(self, span: Span) -> SpanHandler:
        return SpanHandler(span, self.record_inputs, self.record_outputs)

    def run_start(self, run: RunStart) -> SpanHandler:
        """
        Initializes new OTel Span as a parent.

        Args:
            run: The start of the run.

        Returns:
            span object as a parent for all subsequent events for this run
        """
        with self.tracer.start_as_current_span("run", end_on_exit=False, kind=SpanKind.SERVER) as span:
            return (
                self._handle_span(span)
                .set("cmcopula.run.command", run.command)
                .set_input("cmcopula.run.config", run.config_path)
            )

    def event_start(self, event: Event, run_context: Optional[SpanHandler]) -> SpanHandler:
        """
        Starts a new event as a span, child of the run span when there is one.

        Args:
            event: Event to register
            run_context: Parent span for this event

        Returns:
            child span of the run, or a root span outside of a run

        Raises:
            ValueError: if the event is not one of the cmcopula events
        """
        if isinstance(event, SolveEvent):
            with self._new_span(run_context, "solve") as span:
                return (
                    self._handle_span(span)
                    .set("cmcopula.solve.direction", event.direction)
                    .set("cmcopula.solve.method", event.method)
                    .set_input("cmcopula.solve.dimension", event.dimension)
                    .set_input("cmcopula.solve.cells", event.cells)
                )
        if isinstance(event, SimulationEvent):
            with self._new_span(run_context, "simulate") as span:
                return (
                    self._handle_span(span)
                    .set_input("cmcopula.simulate.paths", event.n_paths)
                    .set_input("cmcopula.simulate.seed", event.seed)
                    .set("cmcopula.simulate.workers", event.workers)
                )
        if isinstance(event, ConsistencyEvent):
            with self._new_span(run_context, "consistency") as span:
                return (
                    self._handle_span(span)
                    .set("cmcopula.consistency.condition", event.condition)
                    .set_input("cmcopula.consistency.component", event.component)
                )
        if isinstance(event, PricingEvent):
            with self._new_span(run_context, "pricing") as span:
                return (
                    self._handle_span(span)
                    .set("cmcopula.pricing.kind", event.kind)
                    .set("cmcopula.pricing.method", event.method)
                    .set_input("cmcopula.pricing.paths", event.n_paths)
                    .set_input("cmcopula.pricing.seed", event.seed)
                )

        raise ValueError(f"Unsupported event: {type(event)}")

    def event_end(
        self, event: Optional[Event], run_context: Optional[SpanHandler], event_context: SpanHandler, elapsed: float
    ) -> None:
        """
        Records the outcome of the operation and closes its span.

        Args:
            event: the completed event, None when the operation recorded nothing
            run_context: parent span
            event_context: event span
            elapsed: wall time in seconds
        """
        event_context.set("cmcopula.elapsed", elapsed)

        if isinstance(event, SolveEvent):
            event_context.set_output("cmcopula.solve.max-row-error", event.max_row_error)
        elif isinstance(event, SimulationEvent):
            event_context.set_output("cmcopula.simulate.jumps", event.jumps)
        elif isinstance(event, ConsistencyEvent):
            event_context.set_output("cmcopula.consistency.verdict", event.verdict).set_output(
                "cmcopula.consistency.witnesses", event.witnesses
            )
        elif isinstance(event, PricingEvent):
            event_context.set_output("cmcopula.pricing.strata", event.strata).set_output(
                "cmcopula.pricing.excluded", event.excluded
            )

        event_context.end_successfully()

    def run_end(self, output: RunEnd, run_context: Optional[SpanHandler]) -> None:
        """
        Finalizes the run, ending its span.

        Args:
            output: output of the run
            run_context: span to be closed
        """
        if run_context is None:
            return
        run_context.set("cmcopula.run.exit-code", output.exit_code).set_output(
            "cmcopula.run.artifacts", list(output.artifacts)
        )
        if output.exit_code == 0:
            run_context.end_successfully()
        else:
            run_context.end_with_error(f"exit code {output.exit_code}")

    def _new_span(self, parent: Optional[SpanHandler], name: str):  # type: ignore[no-untyped-def]
        context = trace.set_span_in_context(parent.span) if parent is not None else None
        return self.tracer.start_as_current_span(name, context=context, end_on_exit=False, kind=SpanKind.INTERNAL)
