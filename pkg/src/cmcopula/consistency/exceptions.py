from typing import TYPE_CHECKING

from cmcopula.exceptions import CmcError

if TYPE_CHECKING:
    from cmcopula.consistency.report import ConsistencyReport


class AsmViolatedError(CmcError):
    """
    Raised when a strong marginal is requested for a component whose aggregated intensities depend
    on the other components.
    """

    def __init__(self, report: "ConsistencyReport") -> None:
        """
        Args:
            report: The failing report, witnesses included.
        """
        witness = report.witnesses[0] if report.witnesses else None
        detail = f" First witness: {witness.describe()}." if witness else ""
        super().__init__(f"Aggregation condition fails for component {report.component}.{detail}")
        self.report = report


class SupportViolationError(CmcError):
    """
    Raised when a component state has (numerically) zero probability where a weak marginal
    intensity has to be conditioned on it.
    """

    def __init__(self, time: float, k: int, state: int) -> None:
        """
        Args:
            time: Evaluation time.
            k: Component index.
            state: Component state with zero probability.
        """
        super().__init__(f"Component {k} state {state} has zero probability at t={time:.6g}.")
        self.time = time
        self.k = k
        self.state = state
