from dataclasses import dataclass
from functools import reduce
from typing import Optional, Sequence

import numpy as np
from numpy.typing import ArrayLike

from cmcopula.chain.exceptions import DimensionMismatchError, InitialLawError
from cmcopula.chain.space import ProductStateSpace

LAW_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class InitialLaw:
    """
    Law of X_0 over the flattened state space. It does not depend on the scenario.
    """

    probs: np.ndarray

    def __post_init__(self) -> None:
        probs = np.array(self.probs, dtype=float)
        if probs.ndim != 1 or probs.size == 0:
            raise InitialLawError(f"Initial law must be a non-empty vector, got shape {probs.shape}.")
        if np.any(probs < -LAW_TOL):
            raise InitialLawError(f"Initial law has negative entries: min {probs.min():.3g}.")
        if abs(probs.sum() - 1.0) > LAW_TOL:
            raise InitialLawError(f"Initial law sums to {probs.sum():.15g} instead of 1.")
        probs = np.clip(probs, 0.0, None)
        probs.setflags(write=False)
        object.__setattr__(self, "probs", probs)

    @classmethod
    def point_mass(cls, space: ProductStateSpace, state: Sequence[int]) -> "InitialLaw":
        """
        Dirac law at a single full state.

        Args:
            space: The state space.
            state: Multi-index of the state.

        Returns:
            The point mass.
        """
        probs = np.zeros(space.size)
        probs[space.flat_index(state)] = 1.0
        return cls(probs)

    @classmethod
    def product(cls, marginals: Sequence[ArrayLike]) -> "InitialLaw":
        """
        Law with independent coordinates; flattening follows the Kronecker order of the space.

        Args:
            marginals: One probability vector per component.

        Returns:
            The product law.
        """
        vectors = [cls(marginal).probs for marginal in marginals]
        return cls(reduce(np.kron, vectors))

    @property
    def dimension(self) -> int:
        """
        Number of states d.
        """
        return self.probs.size

    @property
    def support(self) -> np.ndarray:
        """
        Flat indices with positive probability.
        """
        return np.flatnonzero(self.probs > LAW_TOL)

    def marginal(self, space: ProductStateSpace, k: int) -> np.ndarray:
        """
        Law of component k at time 0.

        Args:
            space: The state space the law lives on.
            k: Component index.

        Returns:
            Probability vector over S_k.
        """
        self.check_space(space)
        return space.marginalize(self.probs, k)

    def check_space(self, space: ProductStateSpace) -> None:
        """
        Asserts that the law lives on the given state space.

        Args:
            space: The state space.

        Raises:
            DimensionMismatchError: If the sizes differ.
        """
        if self.dimension != space.size:
            raise DimensionMismatchError(space.size, self.dimension, "initial law length")

    def max_deviation(self, other: "InitialLaw", space: Optional[ProductStateSpace] = None) -> float:
        """
        Sup-norm distance to another law.

        Args:
            other: Law to compare with.
            space: Optional state space both laws must live on.

        Returns:
            Largest absolute entrywise difference.

        Raises:
            DimensionMismatchError: If the laws have different lengths.
        """
        if space is not None:
            self.check_space(space)
        if other.dimension != self.dimension:
            raise DimensionMismatchError(self.dimension, other.dimension, "initial law length")
        return float(np.max(np.abs(self.probs - other.probs)))
