from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Optional

import numpy as np

from cmcopula.chain import CmcModel, RatePath
from cmcopula.copulae.spec import MarginalSpec


class CopulaKind(str, Enum):
    """
    Construction a candidate came from.
    """

    CONDITIONAL_INDEPENDENCE = "conditional-independence"
    COMMON_JUMP = "common-jump"
    PERFECT_DEPENDENCE = "perfect-dependence"
    WEAK_ONLY = "weak-only"
    CUSTOM = "custom"


class InitialProvenance(str, Enum):
    """
    Where the joint initial law of a candidate comes from.
    """

    PRODUCT = "product"
    SUPPLIED = "supplied"


@dataclass(frozen=True, eq=False)
class CopulaCandidate:
    """
    Joint model proposed as a copula of a family of marginal laws.

    Args:
        model: The chain on the product space.
        kind: Construction that produced it.
        provenance: Whether the initial law is the product of the marginal initial laws.
        spec: Marginal laws the candidate is meant to reproduce; implied ones for weak-only candidates.
        rates: Scalar rate paths the candidate was built from, keyed by name.
    """

    model: CmcModel
    kind: CopulaKind = CopulaKind.CUSTOM
    provenance: InitialProvenance = InitialProvenance.PRODUCT
    spec: Optional[MarginalSpec] = None
    rates: Dict[str, RatePath] = field(default_factory=dict)

    @property
    def generator(self) -> np.ndarray:
        """
        Per-cell generators stacked into an (M, d, d) array.
        """
        return self.model.generator.stacked()

    def to_dict(self) -> Dict[str, Any]:
        """
        JSON-ready summary of the candidate.

        Returns:
            Dictionary with kind, provenance, components, rates and per-cell generators.
        """
        return {
            "kind": self.kind.value,
            "provenance": self.provenance.value,
            "components": list(self.model.space.components),
            "grid": self.model.scenario.grid.tolist(),
            "rates": {name: rate.values.tolist() for name, rate in sorted(self.rates.items())},
            "generator": self.generator.tolist(),
            "initial": self.model.initial.probs.tolist(),
        }
