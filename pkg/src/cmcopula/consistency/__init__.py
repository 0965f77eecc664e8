from .checks import check_consistency
from .exceptions import AsmViolatedError, SupportViolationError
from .law import check_law_match, models_law_equivalent
from .report import (
    ConsistencyReport,
    LawMatchVerdict,
    MarginalIntensityPath,
    Verdict,
    WeakOnlyVerdict,
    Witness,
    condition_name,
)
from .strong import check_asm, check_sm, extract_strong_marginal
from .support import support_masks
from .weak import certify_weak_only, check_wm_necessary, weak_marginal_intensity

__all__ = [
    "AsmViolatedError",
    "ConsistencyReport",
    "LawMatchVerdict",
    "MarginalIntensityPath",
    "SupportViolationError",
    "Verdict",
    "WeakOnlyVerdict",
    "Witness",
    "certify_weak_only",
    "check_asm",
    "check_consistency",
    "check_law_match",
    "check_sm",
    "check_wm_necessary",
    "condition_name",
    "extract_strong_marginal",
    "models_law_equivalent",
    "support_masks",
    "weak_marginal_intensity",
]
