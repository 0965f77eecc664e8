from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np
from numpy.typing import ArrayLike

from cmcopula.chain import (
    DimensionMismatchError,
    FactorScenario,
    GeneratorPath,
    InitialLaw,
    ProductStateSpace,
    ScenarioError,
)
from cmcopula.chain.rates import RateLike, as_rate_path


@dataclass(frozen=True, eq=False)
class MarginalTarget:
    """
    Prescribed conditional law of one component: its intensity and its initial law.
    """

    intensity: GeneratorPath
    initial: np.ndarray

    def __post_init__(self) -> None:
        initial = InitialLaw(self.initial).probs
        if initial.size != self.intensity.dimension:
            raise DimensionMismatchError(self.intensity.dimension, initial.size, "initial law length")
        object.__setattr__(self, "initial", initial)

    @classmethod
    def absorbing(
        cls, scenario: FactorScenario, rate: RateLike, initial: Optional[ArrayLike] = None
    ) -> "MarginalTarget":
        """
        Two-state target 0 -> 1 at the given rate, state 1 absorbing.

        Args:
            scenario: The factor scenario.
            rate: Scalar, per-cell or rate path intensity.
            initial: Initial law; starts in 0 by default.

        Returns:
            The target.
        """
        values = as_rate_path(rate, scenario).values
        matrices = [[[-value, value], [0.0, 0.0]] for value in values]
        initial = np.array([1.0, 0.0]) if initial is None else initial
        return cls(GeneratorPath.from_matrices(scenario, matrices), initial)

    @property
    def size(self) -> int:
        """
        Number of component states.
        """
        return self.intensity.dimension


@dataclass(frozen=True, eq=False)
class MarginalSpec:
    """
    Family of prescribed component laws the copula has to reproduce.
    """

    targets: Tuple[MarginalTarget, ...]

    def __post_init__(self) -> None:
        targets = tuple(self.targets)
        if not targets:
            raise ValueError("Marginal spec needs at least one component.")
        grid = targets[0].intensity.grid
        for target in targets[1:]:
            if not np.array_equal(target.intensity.grid, grid):
                raise ScenarioError("All marginal targets must live on the same scenario grid.")
        object.__setattr__(self, "targets", targets)

    @classmethod
    def replicate(cls, target: MarginalTarget, n: int) -> "MarginalSpec":
        """
        Spec with n components sharing one target.

        Args:
            target: The common target.
            n: Number of components.

        Returns:
            The spec.
        """
        return cls(tuple([target] * n))

    @classmethod
    def absorbing(cls, scenario: FactorScenario, rates: Sequence[RateLike]) -> "MarginalSpec":
        """
        Spec of two-state absorbing components started in 0.

        Args:
            scenario: The factor scenario.
            rates: One jump rate per component.

        Returns:
            The spec.
        """
        return cls(tuple(MarginalTarget.absorbing(scenario, rate) for rate in rates))

    @property
    def scenario(self) -> FactorScenario:
        """
        Scenario shared by all targets.
        """
        return self.targets[0].intensity.scenario

    @property
    def n_components(self) -> int:
        """
        Number of components N.
        """
        return len(self.targets)

    @property
    def space(self) -> ProductStateSpace:
        """
        Product state space of the copula.
        """
        return ProductStateSpace(tuple(target.size for target in self.targets))

    def product_initial(self) -> InitialLaw:
        """
        Initial law with independent coordinates distributed as the targets.

        Returns:
            The product law.
        """
        return InitialLaw.product([target.initial for target in self.targets])
