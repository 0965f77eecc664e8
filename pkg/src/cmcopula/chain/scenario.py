from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from numpy.typing import ArrayLike

from cmcopula.chain.exceptions import ScenarioError


def _frozen(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class FactorScenario:
    """
    One realised path of the driving factor Z on a time grid 0 = t_0 < t_1 < ... < t_M = T (years).

    Everything conditional on the reference information up to time t is evaluated along a fixed
    scenario, so intensities, transition fields and state distributions are deterministic objects
    once the scenario is fixed.
    """

    grid: np.ndarray
    values: np.ndarray

    def __post_init__(self) -> None:
        grid = np.array(self.grid, dtype=float)
        if grid.ndim != 1 or grid.size < 2:
            raise ScenarioError("Scenario grid needs at least two time points.")
        if grid[0] != 0.0:
            raise ScenarioError(f"Scenario grid must start at 0, got {grid[0]}.")
        if not np.all(np.diff(grid) > 0):
            raise ScenarioError("Scenario grid must be strictly increasing.")

        values = np.array(self.values, dtype=float)
        if values.ndim == 1:
            values = values[:, None]
        if values.ndim != 2 or values.shape[0] != grid.size:
            raise ScenarioError(f"Expected one factor vector per grid point ({grid.size}), got shape {values.shape}.")
        if not np.all(np.isfinite(values)):
            raise ScenarioError("Factor values must be finite.")

        object.__setattr__(self, "grid", _frozen(grid))
        object.__setattr__(self, "values", _frozen(values))

    @classmethod
    def from_times(cls, times: ArrayLike, values: Optional[ArrayLike] = None) -> "FactorScenario":
        """
        Builds a scenario on the given grid. Without values the factor is identically zero.

        Args:
            times: Grid points starting at 0.
            values: Per-grid-point factor vectors.

        Returns:
            The scenario.
        """
        grid = np.asarray(times, dtype=float)
        return cls(grid, np.zeros((grid.size, 1)) if values is None else values)

    @classmethod
    def uniform(cls, horizon: float, step: float, values: Optional[ArrayLike] = None) -> "FactorScenario":
        """
        Builds a scenario on an equidistant grid.

        Args:
            horizon: Final time T.
            step: Grid step; the last cell is shortened if T is not a multiple of it.
            values: Per-grid-point factor vectors.

        Returns:
            The scenario.

        Raises:
            ScenarioError: If horizon or step are not positive.
        """
        if horizon <= 0 or step <= 0:
            raise ScenarioError(f"Horizon and step must be positive, got {horizon} and {step}.")
        n_cells = int(np.ceil(horizon / step - 1e-9))
        grid = np.minimum(np.arange(n_cells + 1) * step, horizon)
        grid[-1] = horizon
        return cls.from_times(grid, values)

    @property
    def horizon(self) -> float:
        """
        Final time T.
        """
        return float(self.grid[-1])

    @property
    def n_cells(self) -> int:
        """
        Number of grid cells M.
        """
        return self.grid.size - 1

    @property
    def cell_lengths(self) -> np.ndarray:
        """
        Lengths t_{i+1} - t_i of all cells.
        """
        return np.diff(self.grid)

    @property
    def midpoints(self) -> np.ndarray:
        """
        Midpoints of all cells.
        """
        return 0.5 * (self.grid[:-1] + self.grid[1:])

    def cell_of(self, t: float) -> int:
        """
        Index of the cell [t_i, t_{i+1}) containing t; the final time belongs to the last cell.

        Args:
            t: Time in [0, T].

        Returns:
            Cell index.

        Raises:
            ScenarioError: If t lies outside [0, T].
        """
        self.check_time(t)
        return int(min(np.searchsorted(self.grid, t, side="right") - 1, self.n_cells - 1))

    def grid_index(self, t: float, atol: float = 1e-12) -> Optional[int]:
        """
        Position of t on the grid, if it is a grid point.

        Args:
            t: Time to look up.
            atol: Absolute tolerance when matching grid points.

        Returns:
            Grid index, or None for off-grid times.
        """
        matches = np.flatnonzero(np.abs(self.grid - t) <= atol)
        return int(matches[0]) if matches.size else None

    def overlaps(self, s: float, t: float) -> np.ndarray:
        """
        Length of the intersection of [s, t] with every cell.

        Args:
            s: Interval start.
            t: Interval end.

        Returns:
            Array of M overlap lengths.
        """
        lower = np.maximum(self.grid[:-1], s)
        upper = np.minimum(self.grid[1:], t)
        return np.clip(upper - lower, 0.0, None)

    def history(self, t: float) -> Tuple[np.ndarray, np.ndarray]:
        """
        Grid points and factor values observed up to time t.

        Args:
            t: Observation time.

        Returns:
            Tuple of (times, values) restricted to grid points not after t.
        """
        self.check_time(t)
        mask = self.grid <= t + 1e-12
        return self.grid[mask], self.values[mask]

    def check_time(self, t: float) -> None:
        """
        Validates that t lies in [0, T].

        Args:
            t: Time to validate.

        Raises:
            ScenarioError: If t lies outside [0, T].
        """
        if not -1e-12 <= t <= self.horizon + 1e-12:
            raise ScenarioError(f"Time {t} outside the scenario horizon [0, {self.horizon}].")
