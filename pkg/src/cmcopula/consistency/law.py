from typing import Union

import numpy as np
from numpy.typing import ArrayLike

from cmcopula.chain import CmcModel, DimensionMismatchError, GeneratorPath
from cmcopula.chain.exceptions import ScenarioError
from cmcopula.consistency.report import LawMatchVerdict, MarginalIntensityPath

LAW_TOL = 1e-7

IntensityLike = Union[MarginalIntensityPath, GeneratorPath]


def _path(intensity: IntensityLike) -> GeneratorPath:
    return intensity.generator if isinstance(intensity, MarginalIntensityPath) else intensity


def _compare(
    first: GeneratorPath, first_initial: np.ndarray, second: GeneratorPath, second_initial: np.ndarray, tol: float
) -> LawMatchVerdict:
    if first.dimension != second.dimension:
        raise DimensionMismatchError(first.dimension, second.dimension, "intensity dimension")
    if first_initial.shape != second_initial.shape or first_initial.size != first.dimension:
        raise DimensionMismatchError(first.dimension, second_initial.size, "initial law length")
    if first.n_cells != second.n_cells or not np.allclose(first.grid, second.grid, rtol=0.0, atol=1e-12):
        raise ScenarioError("Intensities must live on the same grid to be compared.")

    per_cell = np.abs(first.stacked() - second.stacked()).max(axis=(1, 2))
    worst = int(np.argmax(per_cell))
    intensity_deviation = float(per_cell[worst])
    initial_deviation = float(np.max(np.abs(first_initial - second_initial)))
    return LawMatchVerdict(
        passed=intensity_deviation <= tol and initial_deviation <= tol,
        intensity_deviation=intensity_deviation,
        initial_deviation=initial_deviation,
        worst_cell=worst,
    )


def check_law_match(
    intensity: IntensityLike,
    initial: ArrayLike,
    target: IntensityLike,
    target_initial: ArrayLike,
    tol: float = LAW_TOL,
) -> LawMatchVerdict:
    """
    Decides whether a component has the prescribed conditional law.

    Two chains on the same state space have the same conditional law given the scenario if and
    only if their intensities agree on every cell and their initial laws agree.

    Args:
        intensity: Intensity of the component.
        initial: Initial law of the component.
        target: Prescribed intensity.
        target_initial: Prescribed initial law.
        tol: Allowed sup-norm deviation for both comparisons.

    Returns:
        The verdict with both deviations.
    """
    return _compare(
        _path(intensity),
        np.asarray(initial, dtype=float),
        _path(target),
        np.asarray(target_initial, dtype=float),
        tol,
    )


def models_law_equivalent(first: CmcModel, second: CmcModel, tol: float = LAW_TOL) -> LawMatchVerdict:
    """
    Decides whether two models induce the same conditional law of the whole chain.

    Args:
        first: First model.
        second: Second model.
        tol: Allowed sup-norm deviation.

    Returns:
        The verdict; a pass implies equal transition fields and state distributions.

    Raises:
        DimensionMismatchError: If the state spaces differ.
    """
    if first.space != second.space:
        raise DimensionMismatchError(first.space.size, second.space.size, "state space size")
    return _compare(first.generator, first.initial.probs, second.generator, second.initial.probs, tol)
