from .estimators import (
    EmpiricalTransition,
    EstimatorReport,
    compensator_residual,
    empirical_transition,
    empirical_weak_markov_test,
)
from .exceptions import InsufficientSamplesError, InvalidSeedStreamError, SimulationError
from .paths import PathBundle
from .simulate import BLOCK_SIZE, block_generator, simulate, thread_cap

__all__ = [
    "BLOCK_SIZE",
    "EmpiricalTransition",
    "EstimatorReport",
    "InsufficientSamplesError",
    "InvalidSeedStreamError",
    "PathBundle",
    "SimulationError",
    "block_generator",
    "compensator_residual",
    "empirical_transition",
    "empirical_weak_markov_test",
    "simulate",
    "thread_cap",
]
