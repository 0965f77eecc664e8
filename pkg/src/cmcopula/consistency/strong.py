import logging
from typing import List, Optional, Tuple

import numpy as np

from cmcopula.audit import ConsistencyEvent, EventTracker
from cmcopula.chain import CmcModel, GeneratorPath, complete_diagonal, validate_generator
from cmcopula.consistency.exceptions import AsmViolatedError
from cmcopula.consistency.report import (
    ConsistencyReport,
    MarginalIntensityPath,
    Verdict,
    Witness,
    condition_name,
)
from cmcopula.consistency.support import SUPPORT_EPS, support_masks
from cmcopula.kolmogorov import TransitionField

logger = logging.getLogger(__name__)

STRUCTURAL_TOL = 1e-12


def _aggregated_rates(model: CmcModel, k: int, cell: int) -> np.ndarray:
    """
    Sum of intensities from every full state x into all y with a given y^k, shape (d, |S_k|).
    """
    return model.generator.cells[cell].entries @ model.space.component_indicator(k)


def _compare_aggregates(
    model: CmcModel, k: int, tol: float, condition: str, masks: Optional[np.ndarray]
) -> ConsistencyReport:
    space = model.space
    own = space.coordinates[:, k]
    n_k = space.components[k]
    witnesses: List[Witness] = []
    deviation = 0.0
    marginal_cells = []
    flagged: List[Tuple[int, int]] = []

    for cell in range(model.generator.n_cells):
        aggregates = _aggregated_rates(model, k, cell)
        mask = np.ones(space.size, dtype=bool) if masks is None else masks[cell]
        rates = np.zeros((n_k, n_k))
        for x_k in range(n_k):
            group = np.flatnonzero((own == x_k) & mask)
            if group.size == 0:
                # component state unreachable on this cell: any row represents it
                group = np.flatnonzero(own == x_k)[:1]
                flagged.append((cell, x_k))
            rows = aggregates[group]
            rates[x_k] = rows[0]
            for y_k in range(n_k):
                if y_k == x_k:
                    continue
                column = rows[:, y_k]
                high, low = int(np.argmax(column)), int(np.argmin(column))
                gap = float(column[high] - column[low])
                deviation = max(deviation, gap)
                if gap > tol:
                    witnesses.append(
                        Witness(
                            condition=condition,
                            cell=cell,
                            x=space.multi_index(group[high]),
                            x_bar=space.multi_index(group[low]),
                            y_k=y_k,
                            lhs=float(column[high]),
                            rhs=float(column[low]),
                        )
                    )
        marginal_cells.append(rates)

    verdict = Verdict.FAIL if witnesses else Verdict.PASS
    marginal = None
    if verdict == Verdict.PASS:
        cells = tuple(validate_generator(complete_diagonal(rates), STRUCTURAL_TOL) for rates in marginal_cells)
        marginal = MarginalIntensityPath(
            k=k,
            generator=GeneratorPath(model.scenario, cells),
            times=model.scenario.midpoints,
            flagged=tuple(flagged),
        )
    return ConsistencyReport(
        component=k,
        verdicts={condition: verdict},
        witnesses=witnesses,
        marginal=marginal,
        max_deviation={condition: deviation},
    )


def _tracked(
    model: CmcModel,
    k: int,
    tol: float,
    prefix: str,
    masks: Optional[np.ndarray],
    event_tracker: Optional[EventTracker],
) -> ConsistencyReport:
    model.space.component_indicator(k)
    condition = condition_name(prefix, k)
    tracker = EventTracker.resolve(event_tracker)
    event = ConsistencyEvent(condition=condition, component=k)
    with tracker.track_event(event) as span:
        report = _compare_aggregates(model, k, tol, condition, masks)
        event.verdict = report.verdicts[condition].value
        event.witnesses = len(report.witnesses)
        span(event)
    logger.debug("%s: %s (max deviation %.3g)", condition, event.verdict, report.max_deviation[condition])
    return report


def check_asm(
    model: CmcModel, k: int, tol: float = STRUCTURAL_TOL, event_tracker: Optional[EventTracker] = None
) -> ConsistencyReport:
    """
    Checks the aggregation condition: on every cell and for every x^k != y^k, the intensity
    sum_{y^{-k}} lambda^{x, (y^k, y^{-k})} must not depend on x^{-k}.

    The condition is sufficient for strong Markovian consistency of component k whatever the
    initial law, but it depends on the chosen version of the intensity.

    Args:
        model: The model.
        k: Component index.
        tol: Allowed deviation between aggregates.
        event_tracker: Tracker notified about the check.

    Returns:
        Report with verdict "ASM-{k+1}", witnesses on failure and the strong marginal on success.
    """
    return _tracked(model, k, tol, "ASM", None, event_tracker)


def check_sm(
    model: CmcModel,
    k: int,
    tol: float = STRUCTURAL_TOL,
    support_eps: float = SUPPORT_EPS,
    field: Optional[TransitionField] = None,
    event_tracker: Optional[EventTracker] = None,
) -> ConsistencyReport:
    """
    Checks the aggregation condition only between full states that carry probability on each cell.

    This is the characterisation of strong Markovian consistency; unlike the aggregation condition it
    depends on the initial law, because states of zero probability never contribute.

    Args:
        model: The model.
        k: Component index.
        tol: Allowed deviation between aggregates.
        support_eps: Probabilities at or below this value count as zero.
        field: Previously solved forward field of the model.
        event_tracker: Tracker notified about the check.

    Returns:
        Report with verdict "SM-{k+1}", witnesses on failure and the strong marginal on success.
    """
    masks = support_masks(model, field, support_eps)
    return _tracked(model, k, tol, "SM", masks, event_tracker)


def extract_strong_marginal(model: CmcModel, k: int, tol: float = STRUCTURAL_TOL) -> MarginalIntensityPath:
    """
    Marginal intensity of component k read off any row of each x^k group.

    Args:
        model: The model.
        k: Component index.
        tol: Allowed deviation between aggregates.

    Returns:
        The strong marginal intensity.

    Raises:
        AsmViolatedError: If the aggregation condition fails.
    """
    report = check_asm(model, k, tol)
    if report.marginal is None:
        raise AsmViolatedError(report)
    return report.marginal
