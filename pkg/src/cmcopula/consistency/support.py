from typing import Optional

import numpy as np
from numpy.typing import ArrayLike

from cmcopula.chain import CmcModel
from cmcopula.chain.exceptions import ScenarioError
from cmcopula.kolmogorov import TransitionField, solve_forward, state_distribution

SUPPORT_EPS = 1e-12


def evaluation_times(model: CmcModel, times: Optional[ArrayLike] = None) -> np.ndarray:
    """
    One evaluation time per cell: the given ones, or the cell midpoints.

    Args:
        model: The model.
        times: Per-cell times; each must lie in the closure of its cell.

    Returns:
        Array of M times.

    Raises:
        ScenarioError: If a time lies outside its cell.
    """
    scenario = model.scenario
    if times is None:
        return scenario.midpoints
    times = np.asarray(times, dtype=float).reshape(-1)
    if times.size != scenario.n_cells:
        raise ScenarioError(f"Expected {scenario.n_cells} evaluation times, got {times.size}.")
    grid = scenario.grid
    outside = np.flatnonzero((times < grid[:-1] - 1e-12) | (times > grid[1:] + 1e-12))
    if outside.size:
        cell = int(outside[0])
        raise ScenarioError(f"Evaluation time {times[cell]} lies outside cell {cell} [{grid[cell]}, {grid[cell + 1]}].")
    return times


def laws_at(model: CmcModel, times: np.ndarray, field: Optional[TransitionField] = None) -> np.ndarray:
    """
    Law of X at one time per cell, propagated from the left grid point of the cell.

    Args:
        model: The model.
        times: Per-cell evaluation times.
        field: Previously solved forward field of the model.

    Returns:
        Array of shape (M, d).
    """
    field = field or solve_forward(model)
    grid_laws = state_distribution(model, field).probs
    laws = np.empty((model.scenario.n_cells, model.dimension))
    for cell, time in enumerate(times):
        start = float(model.scenario.grid[cell])
        laws[cell] = grid_laws[cell] @ field.at(start, max(start, float(time)))
    return np.clip(laws, 0.0, None)


def support_masks(
    model: CmcModel, field: Optional[TransitionField] = None, support_eps: float = SUPPORT_EPS
) -> np.ndarray:
    """
    States with positive probability inside each cell (evaluated at the cell midpoint).

    Args:
        model: The model.
        field: Previously solved forward field of the model.
        support_eps: Probabilities at or below this value count as zero.

    Returns:
        Boolean array of shape (M, d).
    """
    return laws_at(model, model.scenario.midpoints, field) > support_eps
