from abc import ABC
from dataclasses import dataclass, field
from typing import List, Optional


@dataclass
class Event(ABC):
    """
    Base class for all events.
    """


@dataclass
class SolveEvent(Event):
    """
    SolveEvent is fired when a transition field is computed from a generator path.
    """

    direction: str
    method: str
    dimension: int
    cells: int

    max_row_error: Optional[float] = None


@dataclass
class SimulationEvent(Event):
    """
    SimulationEvent is fired when sample paths are drawn for a model.
    """

    n_paths: int
    seed: int
    blocks: int
    workers: int

    jumps: Optional[int] = None


@dataclass
class ConsistencyEvent(Event):
    """
    ConsistencyEvent is fired when a consistency condition is checked for one component.
    """

    condition: str
    component: int

    verdict: Optional[str] = None
    witnesses: Optional[int] = None


@dataclass
class PricingEvent(Event):
    """
    PricingEvent is fired when premia are evaluated for a pool.
    """

    kind: str
    method: str
    n_paths: Optional[int] = None
    seed: Optional[int] = None

    strata: Optional[int] = None
    excluded: Optional[int] = None


@dataclass
class RunStart:
    """
    Class representing the start of a command run.
    """

    command: str
    config_path: Optional[str] = None


@dataclass
class RunEnd:
    """
    Class representing the end of a command run.
    """

    command: str
    exit_code: int
    artifacts: List[str] = field(default_factory=list)
