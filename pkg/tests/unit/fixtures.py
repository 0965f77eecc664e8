# pylint: disable=missing-docstring, missing-return-doc, missing-param-doc, missing-return-type-doc

"""
Small models shared by the unit tests.
"""

from typing import Sequence

import numpy as np

from cmcopula.chain import CmcModel, FactorScenario, GeneratorPath, InitialLaw, ProductStateSpace
from cmcopula.copulae import CopulaCandidate, MarginalSpec, build_weak_only

HORIZON = 1.0
STEP = 0.05


def unit_scenario(horizon: float = HORIZON, step: float = STEP) -> FactorScenario:
    return FactorScenario.uniform(horizon, step)


def factor_scenario() -> FactorScenario:
    grid = np.linspace(0.0, 1.0, 11)
    return FactorScenario.from_times(grid, np.sin(3 * grid) + 1.0)


def switching(a: float, b: float) -> np.ndarray:
    return np.array([[-a, a], [b, -b]])


def absorbing(a: float) -> np.ndarray:
    return np.array([[-a, a], [0.0, 0.0]])


def two_state_model(a: float = 1.0, b: float = 2.0, scenario: FactorScenario = None) -> CmcModel:
    scenario = scenario or unit_scenario()
    space = ProductStateSpace.single(2)
    return CmcModel(space, GeneratorPath.constant(scenario, switching(a, b)), InitialLaw.point_mass(space, (0,)))


def absorbing_spec(rates: Sequence[float] = (1.0, 2.0)) -> MarginalSpec:
    return MarginalSpec.absorbing(unit_scenario(), list(rates))


def weak_only(c: float = 1.0, a: float = 1.0, b: float = 1.0) -> CopulaCandidate:
    return build_weak_only(unit_scenario(), a, b, c)
