from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, List, Optional, Tuple

import numpy as np
import pandas as pd
from scipy.linalg import expm

from cmcopula.chain import FactorScenario, GeneratorPath, ProductStateSpace
from cmcopula.chain.exceptions import ScenarioError
from cmcopula.kolmogorov.exceptions import OffGridTimeError

ROW_TOL = 1e-10
GRID_ATOL = 1e-12


def _frozen(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class TransitionField:
    """
    Conditional transition matrices P(s, t) of a chain along one scenario.

    The field keeps one exact propagator per grid cell; P(t_i, t_j) is their ordered product.
    `direction` records which Kolmogorov equation produced the propagators and fixes the order in
    which products are accumulated (left to right for forward, right to left for backward).
    """

    generator: GeneratorPath
    propagators: np.ndarray
    direction: str = "forward"
    method: str = "expm"

    def __post_init__(self) -> None:
        propagators = np.array(self.propagators, dtype=float)
        expected = (self.generator.n_cells, self.generator.dimension, self.generator.dimension)
        if propagators.shape != expected:
            raise ScenarioError(f"Expected propagators of shape {expected}, got {propagators.shape}.")
        object.__setattr__(self, "propagators", _frozen(propagators))

    @property
    def scenario(self) -> FactorScenario:
        """
        Scenario the field is evaluated along.
        """
        return self.generator.scenario

    @property
    def grid(self) -> np.ndarray:
        """
        Grid points t_0, ..., t_M.
        """
        return self.scenario.grid

    @property
    def dimension(self) -> int:
        """
        Number of states d.
        """
        return self.generator.dimension

    @cached_property
    def from_origin(self) -> np.ndarray:
        """
        P(0, t_j) for every grid point, shape (M + 1, d, d).
        """
        matrices = np.empty((self.grid.size, self.dimension, self.dimension))
        matrices[0] = np.eye(self.dimension)
        for i, propagator in enumerate(self.propagators):
            matrices[i + 1] = matrices[i] @ propagator
        return _frozen(matrices)

    def between(self, i: int, j: int) -> np.ndarray:
        """
        P(t_i, t_j) for grid indices i <= j.

        Args:
            i: Index of the start point.
            j: Index of the end point.

        Returns:
            The d x d transition matrix; the identity when i == j.

        Raises:
            ValueError: If i > j or an index is outside the grid.
        """
        if not 0 <= i <= j < self.grid.size:
            raise ValueError(f"Need 0 <= i <= j <= {self.grid.size - 1}, got i={i}, j={j}.")
        result = np.eye(self.dimension)
        if self.direction == "backward":
            for cell in range(j - 1, i - 1, -1):
                result = self.propagators[cell] @ result
        else:
            for cell in range(i, j):
                result = result @ self.propagators[cell]
        return result

    def matrix(self, s: float, t: float) -> np.ndarray:
        """
        P(s, t) for grid times.

        Args:
            s: Start time, a grid point.
            t: End time, a grid point with t >= s.

        Returns:
            The d x d transition matrix.

        Raises:
            OffGridTimeError: If s or t is not a grid point.
        """
        return self.between(self._grid_index(s), self._grid_index(t))

    def at(self, s: float, t: float) -> np.ndarray:
        """
        P(s, t) for arbitrary times in [0, T], splitting the cells that contain s and t exactly.

        Args:
            s: Start time.
            t: End time with t >= s.

        Returns:
            The d x d transition matrix.

        Raises:
            ValueError: If t < s.
        """
        self.scenario.check_time(s)
        self.scenario.check_time(t)
        if t < s - GRID_ATOL:
            raise ValueError(f"Need s <= t, got s={s}, t={t}.")
        result = np.eye(self.dimension)
        if t <= s:
            return result
        overlaps = self.scenario.overlaps(s, t)
        for cell in np.flatnonzero(overlaps > 0):
            length = self.scenario.cell_lengths[cell]
            if abs(overlaps[cell] - length) <= GRID_ATOL:
                propagator = self.propagators[cell]
            else:
                propagator = expm(overlaps[cell] * self.generator.cells[cell].entries)
            result = result @ propagator
        return result

    def pairs(self) -> Iterator[Tuple[int, int, np.ndarray]]:
        """
        Iterates over all grid pairs i <= j, reusing partial products.

        Yields:
            Tuples (i, j, P(t_i, t_j)).
        """
        for i in range(self.grid.size):
            current = np.eye(self.dimension)
            yield i, i, current
            for j in range(i + 1, self.grid.size):
                current = current @ self.propagators[j - 1]
                yield i, j, current

    def max_row_error(self) -> float:
        """
        Largest deviation of a cell propagator from row-stochasticity.

        Returns:
            Maximum over cells of row-sum error and negative mass.
        """
        row_error = np.abs(self.propagators.sum(axis=2) - 1.0).max(initial=0.0)
        negative = np.clip(-self.propagators, 0.0, None).max(initial=0.0)
        return float(max(row_error, negative))

    def to_frame(
        self, space: Optional[ProductStateSpace] = None, anchors: Optional[List[float]] = None
    ) -> pd.DataFrame:
        """
        Long-format table of P(s, t) over grid pairs.

        Args:
            space: State space used to label states as multi-indices; flat indices otherwise.
            anchors: Start times to include; all grid points by default.

        Returns:
            Data frame with columns s, t, from, to, probability.
        """
        labels = _state_labels(self.dimension, space)
        keep = None if anchors is None else {self._grid_index(anchor) for anchor in anchors}
        records = []
        for i, j, matrix in self.pairs():
            if keep is not None and i not in keep:
                continue
            for x in range(self.dimension):
                for y in range(self.dimension):
                    records.append((self.grid[i], self.grid[j], labels[x], labels[y], matrix[x, y]))
        return pd.DataFrame.from_records(records, columns=["s", "t", "from", "to", "probability"])

    def _grid_index(self, t: float) -> int:
        index = self.scenario.grid_index(t, GRID_ATOL)
        if index is None:
            raise OffGridTimeError(t)
        return index


@dataclass(frozen=True, eq=False)
class StateDistributionPath:
    """
    Law of X_t along the scenario at every grid point: probs[j, x] = P(X_{t_j} = x | F_{t_j}).
    """

    field: TransitionField
    probs: np.ndarray

    def __post_init__(self) -> None:
        probs = np.array(self.probs, dtype=float)
        probs[probs < 0] = 0.0
        object.__setattr__(self, "probs", _frozen(probs))

    @property
    def grid(self) -> np.ndarray:
        """
        Grid points.
        """
        return self.field.grid

    def at(self, t: float) -> np.ndarray:
        """
        Law of X_t; exact for off-grid times.

        Args:
            t: Time in [0, T].

        Returns:
            Probability vector of length d.
        """
        index = self.field.scenario.grid_index(t, GRID_ATOL)
        if index is not None:
            return self.probs[index]
        left = self.field.scenario.cell_of(t)
        vector = self.probs[left] @ self.field.at(float(self.grid[left]), t)
        return np.clip(vector, 0.0, None)

    def marginal(self, space: ProductStateSpace, k: int) -> np.ndarray:
        """
        Law of component k at every grid point.

        Args:
            space: The state space.
            k: Component index.

        Returns:
            Array of shape (M + 1, |S_k|).
        """
        return space.marginalize(self.probs, k)

    def to_frame(self, space: Optional[ProductStateSpace] = None) -> pd.DataFrame:
        """
        Wide table with one row per grid point and one column per state.

        Args:
            space: State space used to label the columns.

        Returns:
            Data frame indexed by time.
        """
        labels = _state_labels(self.probs.shape[1], space)
        frame = pd.DataFrame(self.probs, columns=labels)
        frame.insert(0, "t", self.grid)
        return frame


def _state_labels(dimension: int, space: Optional[ProductStateSpace]) -> List[str]:
    if space is None:
        return [str(x) for x in range(dimension)]
    return ["(" + ",".join(str(c) for c in state) + ")" for state in space.states()]
