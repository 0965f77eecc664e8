from .exceptions import (
    DimensionMismatchError,
    GeneratorError,
    InitialLawError,
    NegativeOffDiagonalError,
    NotSquareError,
    RowSumNonzeroError,
    ScenarioError,
    StateOutOfRangeError,
)
from .generator import GeneratorMatrix, GeneratorPath, complete_diagonal, validate_generator
from .kronecker import embed, kron, kron_product, kron_sum, kron_sum_path
from .law import InitialLaw
from .model import CmcModel
from .rates import RatePath, as_rate_path
from .scenario import FactorScenario
from .space import ProductStateSpace, State

__all__ = [
    "CmcModel",
    "DimensionMismatchError",
    "FactorScenario",
    "GeneratorError",
    "GeneratorMatrix",
    "GeneratorPath",
    "InitialLaw",
    "InitialLawError",
    "NegativeOffDiagonalError",
    "NotSquareError",
    "ProductStateSpace",
    "RatePath",
    "RowSumNonzeroError",
    "ScenarioError",
    "State",
    "StateOutOfRangeError",
    "as_rate_path",
    "complete_diagonal",
    "embed",
    "kron",
    "kron_product",
    "kron_sum",
    "kron_sum_path",
    "validate_generator",
]
