from typing import Optional, Union

from cmcopula.audit import EventTracker
from cmcopula.chain import CmcModel, GeneratorPath
from cmcopula.consistency.report import ConsistencyReport, MarginalIntensityPath
from cmcopula.consistency.strong import STRUCTURAL_TOL, check_asm, check_sm
from cmcopula.consistency.support import SUPPORT_EPS
from cmcopula.consistency.weak import WEAK_TOL, check_wm_necessary
from cmcopula.kolmogorov import solve_forward


def check_consistency(
    model: CmcModel,
    k: int,
    tol: float = STRUCTURAL_TOL,
    weak_tol: float = WEAK_TOL,
    support_eps: float = SUPPORT_EPS,
    target: Optional[Union[MarginalIntensityPath, GeneratorPath]] = None,
    event_tracker: Optional[EventTracker] = None,
) -> ConsistencyReport:
    """
    Runs the aggregation, strong and weak (necessary) conditions for one component.

    The reported marginal is the strong one when the strong condition holds, the weak one otherwise.

    Args:
        model: The model.
        k: Component index.
        tol: Tolerance of the strong conditions.
        weak_tol: Tolerance of the comparison with a target intensity.
        support_eps: Probabilities at or below this value count as zero.
        target: Intensity the component is required to have.
        event_tracker: Tracker notified about the checks.

    Returns:
        Combined report with verdicts ASM-k, SM-k and WM-k.
    """
    field = solve_forward(model, event_tracker=event_tracker)
    asm = check_asm(model, k, tol, event_tracker=event_tracker)
    sm = check_sm(model, k, tol, support_eps, field=field, event_tracker=event_tracker)
    wm = check_wm_necessary(model, k, target=target, tol=weak_tol, support_eps=support_eps, field=field)

    return asm.merge(sm).merge(wm)
