from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from cmcopula.chain import GeneratorPath, State


class Verdict(str, Enum):
    """
    Outcome of a finitely checkable condition.
    """

    PASS = "pass"
    FAIL = "fail"
    NOT_APPLICABLE = "not-applicable"


def condition_name(prefix: str, k: int) -> str:
    """
    Report name of a per-component condition; components are numbered from 1 in reports.

    Args:
        prefix: Condition family, e.g. ASM.
        k: Zero-based component index.

    Returns:
        Name such as "ASM-1".
    """
    return f"{prefix}-{k + 1}"


@dataclass(frozen=True)
class Witness:
    """
    Evidence for a failed condition: on `cell`, the aggregated intensity from full state `x` to
    component state `y_k` (`lhs`) differs from the one from `x_bar` (`rhs`), although x and x_bar
    share component k. For comparisons against a target intensity `x_bar` is None and `rhs` is the
    target value.
    """

    condition: str
    cell: int
    x: State
    x_bar: Optional[State]
    y_k: int
    lhs: float
    rhs: float

    @property
    def deviation(self) -> float:
        """
        Absolute difference between both sides.
        """
        return abs(self.lhs - self.rhs)

    def describe(self) -> str:
        """
        One-line human-readable form.

        Returns:
            Description of the witness.
        """
        other = f"x_bar={self.x_bar}" if self.x_bar is not None else "target"
        return (
            f"{self.condition} cell {self.cell}: x={self.x} vs {other} towards y_k={self.y_k}: "
            f"{self.lhs:.6g} vs {self.rhs:.6g}"
        )

    def to_dict(self) -> Dict[str, Any]:
        """
        JSON-ready form.

        Returns:
            Dictionary with all fields.
        """
        return {
            "condition": self.condition,
            "cell": self.cell,
            "x": list(self.x),
            "x_bar": None if self.x_bar is None else list(self.x_bar),
            "y_k": self.y_k,
            "lhs": self.lhs,
            "rhs": self.rhs,
        }


@dataclass(frozen=True, eq=False)
class MarginalIntensityPath:
    """
    Per-cell intensity matrices of component k. `times` holds the evaluation time of each cell and
    `flagged` the (cell, x^k) entries computed without positive conditioning probability.
    """

    k: int
    generator: GeneratorPath
    times: np.ndarray
    flagged: Tuple[Tuple[int, int], ...] = ()

    def rate(self, cell: int, x_k: int, y_k: int) -> float:
        """
        Marginal intensity from x^k to y^k on a cell.

        Args:
            cell: Cell index.
            x_k: Component state of departure.
            y_k: Component state of arrival.

        Returns:
            The intensity.
        """
        return float(self.generator.cells[cell].entries[x_k, y_k])

    def stacked(self) -> np.ndarray:
        """
        All cell matrices as an (M, n_k, n_k) array.

        Returns:
            The stacked matrices.
        """
        return self.generator.stacked()

    def to_dict(self) -> Dict[str, Any]:
        """
        JSON-ready form.

        Returns:
            Dictionary with the component, times, matrices and flags.
        """
        return {
            "component": self.k,
            "times": self.times.tolist(),
            "matrices": self.stacked().tolist(),
            "flagged": [list(entry) for entry in self.flagged],
        }


@dataclass
class ConsistencyReport:
    """
    Verdicts of the consistency conditions for one component.

    Args:
        component: Zero-based component index.
        verdicts: Verdict per condition name, e.g. {"ASM-1": Verdict.FAIL}.
        witnesses: Evidence for every failed condition.
        marginal: Extracted marginal intensity, when a condition that yields one passed.
        max_deviation: Largest deviation observed per condition.
    """

    component: int
    verdicts: Dict[str, Verdict] = field(default_factory=dict)
    witnesses: List[Witness] = field(default_factory=list)
    marginal: Optional[MarginalIntensityPath] = None
    max_deviation: Dict[str, float] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        """
        True when no condition failed.
        """
        return all(verdict != Verdict.FAIL for verdict in self.verdicts.values())

    def verdict(self, prefix: str) -> Verdict:
        """
        Verdict of a condition family for this component.

        Args:
            prefix: Condition family, e.g. "SM".

        Returns:
            The verdict, not-applicable when the condition was not checked.
        """
        return self.verdicts.get(condition_name(prefix, self.component), Verdict.NOT_APPLICABLE)

    def merge(self, other: "ConsistencyReport") -> "ConsistencyReport":
        """
        Combines two reports on the same component; the marginal of `self` wins when both have one.

        Args:
            other: Report to merge in.

        Returns:
            The combined report.

        Raises:
            ValueError: If the reports concern different components.
        """
        if other.component != self.component:
            raise ValueError(f"Cannot merge reports of components {self.component} and {other.component}.")
        return ConsistencyReport(
            component=self.component,
            verdicts={**self.verdicts, **other.verdicts},
            witnesses=self.witnesses + other.witnesses,
            marginal=self.marginal or other.marginal,
            max_deviation={**self.max_deviation, **other.max_deviation},
        )

    def to_dict(self) -> Dict[str, Any]:
        """
        JSON-ready form.

        Returns:
            Dictionary with verdicts, witnesses, deviations and the marginal.
        """
        return {
            "component": self.component,
            "verdicts": {name: verdict.value for name, verdict in sorted(self.verdicts.items())},
            "max_deviation": dict(sorted(self.max_deviation.items())),
            "witnesses": [witness.to_dict() for witness in self.witnesses],
            "marginal": None if self.marginal is None else self.marginal.to_dict(),
        }


@dataclass
class LawMatchVerdict:
    """
    Result of comparing a marginal law (intensity and initial law) with a target.
    """

    passed: bool
    intensity_deviation: float
    initial_deviation: float
    worst_cell: Optional[int] = None

    def to_dict(self) -> Dict[str, Any]:
        """
        JSON-ready form.

        Returns:
            Dictionary with all fields.
        """
        return {
            "passed": self.passed,
            "intensity_deviation": self.intensity_deviation,
            "initial_deviation": self.initial_deviation,
            "worst_cell": self.worst_cell,
        }


@dataclass
class WeakOnlyVerdict:
    """
    Result of the weak-only certification of one component.

    Args:
        component: Zero-based component index.
        certified: True when the weak marginal exists and the joint history changes the component law.
        reason: Why the component was (not) certified.
        spread: Largest difference of aggregated transition rows found.
        witness: (s, t, x, x_bar) achieving the spread, when certified.
    """

    component: int
    certified: bool
    reason: str
    spread: float = 0.0
    witness: Optional[Tuple[float, float, State, State]] = None

    def to_dict(self) -> Dict[str, Any]:
        """
        JSON-ready form.

        Returns:
            Dictionary with all fields.
        """
        witness = None
        if self.witness is not None:
            s, t, x, x_bar = self.witness
            witness = {"s": s, "t": t, "x": list(x), "x_bar": list(x_bar)}
        return {
            "component": self.component,
            "certified": self.certified,
            "reason": self.reason,
            "spread": self.spread,
            "witness": witness,
        }
