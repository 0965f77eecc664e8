""" cmcopula """

from typing import TYPE_CHECKING, List

from .__version__ import __version__
from .chain import (
    CmcModel,
    DimensionMismatchError,
    FactorScenario,
    GeneratorError,
    GeneratorMatrix,
    GeneratorPath,
    InitialLaw,
    InitialLawError,
    NegativeOffDiagonalError,
    NotSquareError,
    ProductStateSpace,
    RatePath,
    RowSumNonzeroError,
    ScenarioError,
    StateOutOfRangeError,
    kron_sum,
    validate_generator,
)
from .config import ConfigParseError, Tolerances, load_model_config
from .consistency import (
    AsmViolatedError,
    ConsistencyReport,
    SupportViolationError,
    Verdict,
    check_asm,
    check_consistency,
    check_sm,
    extract_strong_marginal,
    weak_marginal_intensity,
)
from .copulae import (
    ConstraintViolatedError,
    CopulaCandidate,
    HeterogeneousMarginalsError,
    InitialCouplingError,
    MarginalSpec,
    NonPositiveRateError,
    WrongKindError,
    validate_precopula,
)
from .exceptions import CmcError
from .kolmogorov import (
    NegativeRateError,
    NonFiniteEntriesError,
    OffGridTimeError,
    StochasticityError,
    TransitionField,
    solve_backward,
    solve_forward,
)
from .montecarlo import InsufficientSamplesError, InvalidSeedStreamError, PathBundle, simulate
from .premium import PoolModel, PremiumQuote, UnsupportedKindError, price, price_closed_form

if TYPE_CHECKING:
    from .audit import EventHandler

event_handlers: List["EventHandler"] = []

__all__ = [
    "__version__",
    "event_handlers",
    "AsmViolatedError",
    "CmcError",
    "CmcModel",
    "ConfigParseError",
    "ConsistencyReport",
    "ConstraintViolatedError",
    "CopulaCandidate",
    "DimensionMismatchError",
    "FactorScenario",
    "GeneratorError",
    "GeneratorMatrix",
    "GeneratorPath",
    "HeterogeneousMarginalsError",
    "InitialCouplingError",
    "InitialLaw",
    "InitialLawError",
    "InsufficientSamplesError",
    "InvalidSeedStreamError",
    "MarginalSpec",
    "NegativeOffDiagonalError",
    "NegativeRateError",
    "NonFiniteEntriesError",
    "NonPositiveRateError",
    "NotSquareError",
    "OffGridTimeError",
    "PathBundle",
    "PoolModel",
    "PremiumQuote",
    "ProductStateSpace",
    "RatePath",
    "RowSumNonzeroError",
    "ScenarioError",
    "StateOutOfRangeError",
    "StochasticityError",
    "SupportViolationError",
    "Tolerances",
    "TransitionField",
    "UnsupportedKindError",
    "Verdict",
    "WrongKindError",
    "check_asm",
    "check_consistency",
    "check_sm",
    "extract_strong_marginal",
    "kron_sum",
    "load_model_config",
    "price",
    "price_closed_form",
    "simulate",
    "solve_backward",
    "solve_forward",
    "validate_generator",
    "validate_precopula",
    "weak_marginal_intensity",
]

# Update the __module__ attribute of exported errors so that messages
# point to this package instead of the module they are defined in, e.g.
# cmcopula.chain.exceptions.ScenarioError -> cmcopula.ScenarioError
__locals = locals()
for __name in __all__:
    if __name.endswith("Error"):
        try:
            __locals[__name].__module__ = "cmcopula"
        except (TypeError, AttributeError):
            pass
