from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from cmcopula.chain.exceptions import ScenarioError
from cmcopula.chain.scenario import FactorScenario


@dataclass(frozen=True, eq=False)
class RatePath:
    """
    Scalar intensity a_t along a scenario, constant on each grid cell (units 1/year).
    """

    scenario: FactorScenario
    values: np.ndarray

    def __post_init__(self) -> None:
        values = np.array(self.values, dtype=float).reshape(-1)
        if values.size != self.scenario.n_cells:
            raise ScenarioError(f"Expected {self.scenario.n_cells} cell rates, got {values.size}.")
        if not np.all(np.isfinite(values)):
            raise ScenarioError("Rates must be finite.")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @classmethod
    def constant(cls, scenario: FactorScenario, value: float) -> "RatePath":
        """
        Rate that is the same on every cell.

        Args:
            scenario: The factor scenario.
            value: The rate.

        Returns:
            The rate path.
        """
        return cls(scenario, np.full(scenario.n_cells, float(value)))

    @classmethod
    def from_factor(
        cls, scenario: FactorScenario, factor: int = 0, offset: float = 0.0, scale: float = 1.0
    ) -> "RatePath":
        """
        Rate driven by one factor coordinate: max(0, offset + scale * Z_{t_i}[factor]) on cell i.

        The factor is read at the left grid point of each cell, so the rate only uses information
        available at the start of the cell.

        Args:
            scenario: The factor scenario.
            factor: Factor coordinate.
            offset: Intercept.
            scale: Loading on the factor.

        Returns:
            The rate path.

        Raises:
            ScenarioError: If the factor coordinate does not exist.
        """
        if not 0 <= factor < scenario.values.shape[1]:
            raise ScenarioError(f"Scenario has {scenario.values.shape[1]} factors, requested factor {factor}.")
        left = scenario.values[:-1, factor]
        return cls(scenario, np.maximum(0.0, offset + scale * left))

    @property
    def minimum(self) -> float:
        """
        Smallest cell rate.
        """
        return float(self.values.min())

    def at(self, t: float) -> float:
        """
        Rate in force at time t (right-continuous).

        Args:
            t: Time in [0, T].

        Returns:
            The rate.
        """
        return float(self.values[self.scenario.cell_of(t)])

    def integral(self, s: float, t: float) -> float:
        """
        Exact integral of the rate over [s, t].

        Args:
            s: Lower limit.
            t: Upper limit.

        Returns:
            The integral (zero when t <= s).
        """
        return float(self.scenario.overlaps(s, t) @ self.values)

    def __add__(self, other: "RatePath") -> "RatePath":
        return RatePath(self.scenario, self.values + other.values)


RateLike = Union[float, int, Sequence[float], np.ndarray, RatePath]


def as_rate_path(rate: RateLike, scenario: FactorScenario) -> RatePath:
    """
    Normalises a scalar, per-cell sequence or rate path to a rate path on the scenario.

    Args:
        rate: The rate specification.
        scenario: The factor scenario.

    Returns:
        The rate path.

    Raises:
        ScenarioError: If a given rate path lives on another grid.
    """
    if isinstance(rate, RatePath):
        if rate.scenario is not scenario and not np.array_equal(rate.scenario.grid, scenario.grid):
            raise ScenarioError("Rate path lives on a different scenario grid.")
        return rate
    if np.ndim(rate) == 0:
        return RatePath.constant(scenario, float(rate))  # type: ignore[arg-type]
    return RatePath(scenario, np.asarray(rate, dtype=float))
