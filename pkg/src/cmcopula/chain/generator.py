from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Tuple, Union

import numpy as np
from numpy.typing import ArrayLike

from cmcopula.chain.exceptions import (
    DimensionMismatchError,
    NegativeOffDiagonalError,
    NotSquareError,
    RowSumNonzeroError,
    ScenarioError,
)
from cmcopula.chain.scenario import FactorScenario

STRUCTURAL_TOL = 1e-12

IntensityRule = Callable[[float, np.ndarray, np.ndarray], ArrayLike]
"""Maps (t, observed grid times, observed factor values) to an intensity matrix."""


@dataclass(frozen=True, eq=False)
class GeneratorMatrix:
    """
    Certified intensity matrix (units 1/year): nonnegative off-diagonal entries, nonpositive diagonal,
    rows summing to zero. Instances are only produced by `validate_generator`.
    """

    entries: np.ndarray

    def __array__(self, dtype: Optional[np.dtype] = None, copy: Optional[bool] = None) -> np.ndarray:
        return self.entries if dtype is None else self.entries.astype(dtype)

    @property
    def dimension(self) -> int:
        """
        Number of states d.
        """
        return self.entries.shape[0]

    @property
    def exit_rates(self) -> np.ndarray:
        """
        Total jump intensity -lambda^{xx} out of every state.
        """
        return -np.diag(self.entries)

    @property
    def max_exit_rate(self) -> float:
        """
        Largest absolute diagonal entry.
        """
        return float(np.max(self.exit_rates)) if self.dimension else 0.0

    def jump_distribution(self) -> np.ndarray:
        """
        Embedded jump chain: off-diagonal rows normalised by the exit rate, absorbing rows left at zero.

        Returns:
            Row-substochastic d x d matrix with zero diagonal.
        """
        rates = self.exit_rates
        jumps = self.entries - np.diag(np.diag(self.entries))
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.where(rates[:, None] > 0, jumps / rates[:, None], 0.0)


def complete_diagonal(matrix: ArrayLike) -> np.ndarray:
    """
    Sets every diagonal entry to minus the off-diagonal row sum.

    Args:
        matrix: Square matrix whose off-diagonal part holds intensities.

    Returns:
        A copy with the diagonal completed.
    """
    completed = np.array(matrix, dtype=float)
    np.fill_diagonal(completed, 0.0)
    np.fill_diagonal(completed, -completed.sum(axis=1))
    return completed


def validate_generator(matrix: Union[ArrayLike, GeneratorMatrix], tol: float = STRUCTURAL_TOL) -> GeneratorMatrix:
    """
    Certifies a matrix as an intensity matrix.

    Off-diagonal entries within `tol` below zero are accepted as rounding noise and clipped to zero,
    after which the diagonal must equal minus the off-diagonal row sum within `tol`.

    Args:
        matrix: Candidate square matrix.
        tol: Absolute tolerance for the checks.

    Returns:
        The certified generator.

    Raises:
        NotSquareError: If the matrix is not square.
        NegativeOffDiagonalError: If an off-diagonal entry is below -tol.
        RowSumNonzeroError: If a row sum deviates from zero by more than tol.
    """
    if isinstance(matrix, GeneratorMatrix):
        return matrix
    entries = np.array(matrix, dtype=float)
    if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
        raise NotSquareError(entries.shape)

    off_diagonal = ~np.eye(entries.shape[0], dtype=bool)
    negative = np.argwhere(off_diagonal & (entries < -tol))
    if negative.size:
        row, col = (int(i) for i in negative[0])
        raise NegativeOffDiagonalError(row, col, float(entries[row, col]))
    entries[off_diagonal & (entries < 0)] = 0.0

    residuals = entries.sum(axis=1)
    bad_rows = np.flatnonzero(np.abs(residuals) > tol)
    if bad_rows.size:
        row = int(bad_rows[0])
        raise RowSumNonzeroError(row, float(residuals[row]))

    entries.setflags(write=False)
    return GeneratorMatrix(entries)


@dataclass(frozen=True, eq=False)
class GeneratorPath:
    """
    Piecewise-constant intensity along a scenario: one certified generator per grid cell.

    The intensity on cell [t_i, t_{i+1}) is obtained by evaluating an intensity rule at the left grid
    point with the factor history observed so far, which keeps it adapted to the scenario.
    """

    scenario: FactorScenario
    cells: Tuple[GeneratorMatrix, ...]

    def __post_init__(self) -> None:
        cells = tuple(self.cells)
        if len(cells) != self.scenario.n_cells:
            raise ScenarioError(f"Expected {self.scenario.n_cells} cell generators, got {len(cells)}.")
        dimensions = {cell.dimension for cell in cells}
        if len(dimensions) != 1:
            raise DimensionMismatchError(cells[0].dimension, max(dimensions - {cells[0].dimension}))
        integrated = float(np.sum(self.scenario.cell_lengths * [cell.max_exit_rate for cell in cells]))
        if not np.isfinite(integrated):
            raise ScenarioError("Integrated exit intensity is not finite.")
        object.__setattr__(self, "cells", cells)

    @classmethod
    def from_matrices(
        cls, scenario: FactorScenario, matrices: Sequence[ArrayLike], tol: float = STRUCTURAL_TOL
    ) -> "GeneratorPath":
        """
        Builds a path from one matrix per cell.

        Args:
            scenario: The factor scenario.
            matrices: Per-cell intensity matrices.
            tol: Validation tolerance.

        Returns:
            The generator path.
        """
        return cls(scenario, tuple(validate_generator(matrix, tol) for matrix in matrices))

    @classmethod
    def constant(cls, scenario: FactorScenario, matrix: ArrayLike, tol: float = STRUCTURAL_TOL) -> "GeneratorPath":
        """
        Builds a time-homogeneous path.

        Args:
            scenario: The factor scenario.
            matrix: The intensity matrix used on every cell.
            tol: Validation tolerance.

        Returns:
            The generator path.
        """
        generator = validate_generator(matrix, tol)
        return cls(scenario, (generator,) * scenario.n_cells)

    @classmethod
    def from_rule(cls, scenario: FactorScenario, rule: IntensityRule, tol: float = STRUCTURAL_TOL) -> "GeneratorPath":
        """
        Evaluates an intensity rule along the scenario.

        Args:
            scenario: The factor scenario.
            rule: Callable receiving (t_i, observed times, observed factor values) for each cell start.
            tol: Validation tolerance.

        Returns:
            The generator path.
        """
        matrices = []
        for start in scenario.grid[:-1]:
            times, values = scenario.history(float(start))
            matrices.append(rule(float(start), times, values))
        return cls.from_matrices(scenario, matrices, tol)

    @property
    def dimension(self) -> int:
        """
        Number of states d.
        """
        return self.cells[0].dimension

    @property
    def n_cells(self) -> int:
        """
        Number of grid cells.
        """
        return len(self.cells)

    @property
    def grid(self) -> np.ndarray:
        """
        Scenario grid.
        """
        return self.scenario.grid

    def stacked(self) -> np.ndarray:
        """
        All cell generators as one array.

        Returns:
            Array of shape (M, d, d).
        """
        return np.stack([cell.entries for cell in self.cells])

    def at(self, t: float) -> GeneratorMatrix:
        """
        Intensity in force at time t (right-continuous; the horizon uses the last cell).

        Args:
            t: Time in [0, T].

        Returns:
            The cell generator.
        """
        return self.cells[self.scenario.cell_of(t)]

    def integrated_exit_rate(self) -> float:
        """
        Sum over cells of cell length times the largest exit rate.

        Returns:
            Upper bound of the integrated absolute diagonal.
        """
        return float(np.sum(self.scenario.cell_lengths * [cell.max_exit_rate for cell in self.cells]))
