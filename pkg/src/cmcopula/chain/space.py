from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import List, Sequence, Tuple

import numpy as np

from cmcopula.chain.exceptions import DimensionMismatchError, StateOutOfRangeError

State = Tuple[int, ...]


@dataclass(frozen=True)
class ProductStateSpace:
    """
    Cartesian product S = S_1 x ... x S_N of finite component state spaces.

    Component states are labelled 0..|S_k|-1. Full states are flattened row-major with the last
    component varying fastest, which is exactly the ordering produced by iterated Kronecker products,
    so a matrix built with `kron` over the components is indexed by `flat_index`.

    Components are indexed from 0 throughout the library.
    """

    components: Tuple[int, ...]

    def __post_init__(self) -> None:
        components = tuple(int(size) for size in self.components)
        if not components:
            raise ValueError("State space needs at least one component.")
        if any(size < 1 for size in components):
            raise ValueError(f"Component sizes must be positive, got {components}.")
        object.__setattr__(self, "components", components)

    @classmethod
    def single(cls, size: int) -> "ProductStateSpace":
        """
        Builds a one-component state space.

        Args:
            size: Number of states.

        Returns:
            The state space {0, ..., size - 1}.
        """
        return cls((size,))

    @property
    def n_components(self) -> int:
        """
        Number of components N.
        """
        return len(self.components)

    @property
    def size(self) -> int:
        """
        Total cardinality d of the product space.
        """
        return int(np.prod(self.components))

    def flat_index(self, state: Sequence[int]) -> int:
        """
        Maps a multi-index (x^1, ..., x^N) to its flat position.

        Args:
            state: One coordinate per component.

        Returns:
            Flat index in [0, d).

        Raises:
            DimensionMismatchError: If the number of coordinates differs from N.
            StateOutOfRangeError: If a coordinate is outside its component.
        """
        if len(state) != self.n_components:
            raise DimensionMismatchError(self.n_components, len(state), "number of coordinates")
        index = 0
        for coordinate, size in zip(state, self.components):
            coordinate = int(coordinate)
            if not 0 <= coordinate < size:
                raise StateOutOfRangeError(coordinate, size)
            index = index * size + coordinate
        return index

    def multi_index(self, index: int) -> State:
        """
        Maps a flat index back to its multi-index.

        Args:
            index: Flat index in [0, d).

        Returns:
            Tuple of component states.

        Raises:
            StateOutOfRangeError: If the index is outside [0, d).
        """
        index = int(index)
        if not 0 <= index < self.size:
            raise StateOutOfRangeError(index, self.size)
        return tuple(int(c) for c in np.unravel_index(index, self.components))

    def flat_indices(self, states: np.ndarray) -> np.ndarray:
        """
        Vectorised `flat_index` for an (n, N) array of multi-indices.

        Args:
            states: Integer array with one row per state.

        Returns:
            Array of n flat indices.
        """
        states = np.asarray(states, dtype=np.int64)
        return np.ravel_multi_index(tuple(states.T), self.components)

    def multi_indices(self, indices: np.ndarray) -> np.ndarray:
        """
        Vectorised `multi_index`.

        Args:
            indices: Array of flat indices.

        Returns:
            Integer array of shape (n, N).
        """
        return np.stack(np.unravel_index(np.asarray(indices, dtype=np.int64), self.components), axis=-1)

    def states(self) -> List[State]:
        """
        Lists all full states in flat order.

        Returns:
            List of multi-indices, position i holding `multi_index(i)`.
        """
        return [tuple(state) for state in product(*(range(size) for size in self.components))]

    @cached_property
    def coordinates(self) -> np.ndarray:
        """
        (d, N) table whose row i is the multi-index of flat state i.
        """
        table = self.multi_indices(np.arange(self.size))
        table.setflags(write=False)
        return table

    def component_indicator(self, k: int) -> np.ndarray:
        """
        Indicator matrix E with E[y, j] = 1 when component k of full state y equals j.

        Right-multiplying a d x d matrix by E sums its columns over all y with a given y^k.

        Args:
            k: Component index.

        Returns:
            Array of shape (d, |S_k|).
        """
        self._check_component(k)
        indicator = np.zeros((self.size, self.components[k]))
        indicator[np.arange(self.size), self.coordinates[:, k]] = 1.0
        return indicator

    def marginalize(self, probs: np.ndarray, k: int) -> np.ndarray:
        """
        Marginal law of component k from a law (or a stack of laws) over the full space.

        Args:
            probs: Array whose last axis has length d.
            k: Component index.

        Returns:
            Array whose last axis has length |S_k|.
        """
        return np.asarray(probs) @ self.component_indicator(k)

    def others(self, k: int) -> "ProductStateSpace":
        """
        State space of all components except k (a single-state space when N = 1).

        Args:
            k: Component index.

        Returns:
            The complementary product space.
        """
        self._check_component(k)
        rest = self.components[:k] + self.components[k + 1 :]
        return ProductStateSpace(rest or (1,))

    def _check_component(self, k: int) -> None:
        if not 0 <= k < self.n_components:
            raise StateOutOfRangeError(k, self.n_components)
