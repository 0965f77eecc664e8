from dataclasses import dataclass, replace
from typing import Optional

from numpy.typing import ArrayLike

from cmcopula.chain.exceptions import DimensionMismatchError
from cmcopula.chain.generator import GeneratorPath
from cmcopula.chain.law import InitialLaw
from cmcopula.chain.scenario import FactorScenario
from cmcopula.chain.space import ProductStateSpace


@dataclass(frozen=True, eq=False)
class CmcModel:
    """
    One fully specified conditional Markov chain along a scenario: state space, piecewise-constant
    intensity and initial law.
    """

    space: ProductStateSpace
    generator: GeneratorPath
    initial: InitialLaw

    def __post_init__(self) -> None:
        if self.generator.dimension != self.space.size:
            raise DimensionMismatchError(self.space.size, self.generator.dimension, "generator dimension")
        self.initial.check_space(self.space)

    @classmethod
    def constant(
        cls,
        space: ProductStateSpace,
        scenario: FactorScenario,
        matrix: ArrayLike,
        initial: Optional[InitialLaw] = None,
    ) -> "CmcModel":
        """
        Time-homogeneous model; without an initial law the chain starts in the all-zero state.

        Args:
            space: The state space.
            scenario: The factor scenario.
            matrix: Intensity matrix used on every cell.
            initial: Initial law.

        Returns:
            The model.
        """
        initial = initial or InitialLaw.point_mass(space, (0,) * space.n_components)
        return cls(space, GeneratorPath.constant(scenario, matrix), initial)

    @property
    def scenario(self) -> FactorScenario:
        """
        Scenario the intensity is evaluated along.
        """
        return self.generator.scenario

    @property
    def dimension(self) -> int:
        """
        Number of full states d.
        """
        return self.space.size

    def with_initial(self, initial: InitialLaw) -> "CmcModel":
        """
        Same intensity with another initial law.

        Args:
            initial: The new initial law.

        Returns:
            The new model.
        """
        return replace(self, initial=initial)
