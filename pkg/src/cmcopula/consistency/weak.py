import logging
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
from numpy.typing import ArrayLike

from cmcopula.chain import CmcModel, GeneratorPath, complete_diagonal, validate_generator
from cmcopula.consistency.exceptions import SupportViolationError
from cmcopula.consistency.report import (
    ConsistencyReport,
    MarginalIntensityPath,
    Verdict,
    WeakOnlyVerdict,
    Witness,
    condition_name,
)
from cmcopula.consistency.support import SUPPORT_EPS, evaluation_times, laws_at
from cmcopula.kolmogorov import TransitionField, marginal_transition_field, solve_forward, state_distribution

logger = logging.getLogger(__name__)

WEAK_TOL = 1e-7
TRANSITION_TOL = 1e-8


def weak_marginal_intensity(
    model: CmcModel,
    k: int,
    times: Optional[ArrayLike] = None,
    support_eps: float = SUPPORT_EPS,
    strict: bool = True,
    field: Optional[TransitionField] = None,
) -> MarginalIntensityPath:
    """
    Marginal intensity that component k must have if it is Markov in its own filtration:
    lambda^{k; x^k y^k}_t = sum_{x^{-k}, y^{-k}} lambda^{x y}_t pi_t(x) / pi^k_t(x^k).

    The weights are evaluated once per cell, at the given times or at the cell midpoints.

    Args:
        model: The model.
        k: Component index.
        times: One evaluation time per cell.
        support_eps: Component probabilities at or below this value count as zero.
        strict: Raise on zero component probability; otherwise flag the entry and weight the group uniformly.
        field: Previously solved forward field of the model.

    Returns:
        The weak marginal intensity.

    Raises:
        SupportViolationError: In strict mode, when some x^k has zero probability at an evaluation time.
    """
    space = model.space
    indicator = space.component_indicator(k)
    own = space.coordinates[:, k]
    n_k = space.components[k]
    times = evaluation_times(model, times)
    laws = laws_at(model, times, field)

    cells = []
    flagged: List[Tuple[int, int]] = []
    for cell, (time, law) in enumerate(zip(times, laws)):
        aggregates = model.generator.cells[cell].entries @ indicator
        component_law = law @ indicator
        rates = np.zeros((n_k, n_k))
        for x_k in range(n_k):
            group = own == x_k
            if component_law[x_k] > support_eps:
                weights = np.where(group, law, 0.0) / component_law[x_k]
            else:
                if strict:
                    raise SupportViolationError(float(time), k, x_k)
                flagged.append((cell, x_k))
                weights = group / group.sum()
            rates[x_k] = weights @ aggregates
        cells.append(validate_generator(complete_diagonal(rates), 1e-10))

    if flagged:
        logger.warning("Weak marginal of component %d uses uniform weights on %d entries", k, len(flagged))
    return MarginalIntensityPath(
        k=k, generator=GeneratorPath(model.scenario, tuple(cells)), times=times, flagged=tuple(flagged)
    )


def check_wm_necessary(
    model: CmcModel,
    k: int,
    target: Optional[Union[MarginalIntensityPath, GeneratorPath]] = None,
    tol: float = WEAK_TOL,
    support_eps: float = SUPPORT_EPS,
    field: Optional[TransitionField] = None,
) -> ConsistencyReport:
    """
    Necessary condition for weak Markovian consistency of component k.

    Without a target the verdict is pass whenever the weak marginal intensity is well defined, and
    not-applicable when some component state has zero probability. With a target intensity the weak
    marginal must also match it on every cell.

    Args:
        model: The model.
        k: Component index.
        target: Intensity the component is required to have.
        tol: Allowed deviation from the target.
        support_eps: Component probabilities at or below this value count as zero.
        field: Previously solved forward field of the model.

    Returns:
        Report with verdict "WM-{k+1}".
    """
    condition = condition_name("WM", k)
    try:
        marginal = weak_marginal_intensity(model, k, support_eps=support_eps, field=field)
    except SupportViolationError as error:
        logger.info("%s not applicable: %s", condition, error)
        return ConsistencyReport(component=k, verdicts={condition: Verdict.NOT_APPLICABLE})

    witnesses: List[Witness] = []
    deviation = 0.0
    if target is not None:
        target_path = target.generator if isinstance(target, MarginalIntensityPath) else target
        representative = [
            model.space.multi_index(int(np.flatnonzero(model.space.coordinates[:, k] == x_k)[0]))
            for x_k in range(model.space.components[k])
        ]
        for cell, (mine, theirs) in enumerate(zip(marginal.generator.cells, target_path.cells)):
            difference = np.abs(mine.entries - theirs.entries)
            deviation = max(deviation, float(difference.max()))
            for x_k, y_k in np.argwhere(difference > tol):
                if x_k == y_k:
                    continue
                witnesses.append(
                    Witness(
                        condition=condition,
                        cell=cell,
                        x=representative[x_k],
                        x_bar=None,
                        y_k=int(y_k),
                        lhs=float(mine.entries[x_k, y_k]),
                        rhs=float(theirs.entries[x_k, y_k]),
                    )
                )
    return ConsistencyReport(
        component=k,
        verdicts={condition: Verdict.FAIL if witnesses else Verdict.PASS},
        witnesses=witnesses,
        marginal=marginal,
        max_deviation={condition: deviation},
    )


def certify_weak_only(
    model: CmcModel,
    k: int,
    s_grid: Optional[Sequence[float]] = None,
    t_grid: Optional[Sequence[float]] = None,
    tol: float = TRANSITION_TOL,
    support_eps: float = SUPPORT_EPS,
    field: Optional[TransitionField] = None,
) -> WeakOnlyVerdict:
    """
    Certifies that component k is Markov in its own filtration but not in the joint one.

    Certification needs the weak marginal intensity to exist, and a pair s < t with two full states
    x != x_bar sharing x^k, both of positive probability at s, whose aggregated transition rows
    P(X^k_t = . | X_s = x) and P(X^k_t = . | X_s = x_bar) differ by more than tol.

    Args:
        model: The model.
        k: Component index.
        s_grid: Start times to scan; all grid points but the last by default.
        t_grid: End times to scan; all grid points but the first by default.
        tol: Minimal difference of aggregated rows.
        support_eps: Probabilities at or below this value count as zero.
        field: Previously solved forward field of the model.

    Returns:
        The verdict, with the strongest witness when certified.
    """
    field = field or solve_forward(model)
    try:
        weak_marginal_intensity(model, k, support_eps=support_eps, field=field)
    except SupportViolationError as error:
        return WeakOnlyVerdict(component=k, certified=False, reason=f"weak marginal undefined: {error}")

    grid = model.scenario.grid
    starts = grid[:-1] if s_grid is None else np.asarray(s_grid, dtype=float)
    ends = grid[1:] if t_grid is None else np.asarray(t_grid, dtype=float)
    distribution = state_distribution(model, field)
    component = marginal_transition_field(field, model.space, k)
    own = model.space.coordinates[:, k]

    best = (0.0, None)
    for s in starts:
        mask = distribution.at(float(s)) > support_eps
        for t in ends:
            if t <= s:
                continue
            rows = component.aggregate(float(s), float(t))
            for x_k in range(model.space.components[k]):
                group = np.flatnonzero((own == x_k) & mask)
                if group.size < 2:
                    continue
                block = rows[group]
                gaps = np.abs(block[:, None, :] - block[None, :, :]).max(axis=2)
                i, j = np.unravel_index(int(np.argmax(gaps)), gaps.shape)
                if gaps[i, j] > best[0]:
                    witness = (
                        float(s),
                        float(t),
                        model.space.multi_index(group[i]),
                        model.space.multi_index(group[j]),
                    )
                    best = (float(gaps[i, j]), witness)

    spread, witness = best
    if spread > tol:
        return WeakOnlyVerdict(
            component=k,
            certified=True,
            reason="joint history changes the component transition law",
            spread=spread,
            witness=witness,
        )
    return WeakOnlyVerdict(
        component=k,
        certified=False,
        reason="component transition law does not depend on the other components",
        spread=spread,
    )
