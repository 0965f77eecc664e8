from .builders import (
    build_common_jump,
    build_conditional_independence,
    build_perfect_dependence,
    build_weak_only,
    joint_jumps,
    joint_jumps_version,
)
from .candidate import CopulaCandidate, CopulaKind, InitialProvenance
from .decomposition import WeakOnlyDecomposition, decompose_weak_only
from .exceptions import (
    ConstraintViolatedError,
    CopulaError,
    HeterogeneousMarginalsError,
    InitialCouplingError,
    NonPositiveRateError,
    WrongKindError,
)
from .precopula import PrecopulaVerdict, validate_precopula
from .spec import MarginalSpec, MarginalTarget

__all__ = [
    "ConstraintViolatedError",
    "CopulaCandidate",
    "CopulaError",
    "CopulaKind",
    "HeterogeneousMarginalsError",
    "InitialCouplingError",
    "InitialProvenance",
    "MarginalSpec",
    "MarginalTarget",
    "NonPositiveRateError",
    "PrecopulaVerdict",
    "WeakOnlyDecomposition",
    "WrongKindError",
    "build_common_jump",
    "build_conditional_independence",
    "build_perfect_dependence",
    "build_weak_only",
    "decompose_weak_only",
    "joint_jumps",
    "joint_jumps_version",
    "validate_precopula",
]
