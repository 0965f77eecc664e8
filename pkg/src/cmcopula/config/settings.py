from dataclasses import dataclass, replace
from typing import Optional

from cmcopula.chain.generator import STRUCTURAL_TOL
from cmcopula.consistency.support import SUPPORT_EPS
from cmcopula.consistency.weak import TRANSITION_TOL
from cmcopula.montecarlo.estimators import P_THRESHOLD, Z_THRESHOLD


@dataclass(frozen=True)
class Tolerances:
    """
    Numerical thresholds shared by the library and the command line.

    Args:
        structural: Generator validation and algebraic identities.
        transition: Comparisons of transition probabilities and weak marginals.
        support: Probabilities at or below this count as zero.
        z_threshold: Largest acceptable |z| of a Monte Carlo estimate.
        p_threshold: Smallest acceptable chi-square p-value.
    """

    structural: float = STRUCTURAL_TOL
    transition: float = TRANSITION_TOL
    support: float = SUPPORT_EPS
    z_threshold: float = Z_THRESHOLD
    p_threshold: float = P_THRESHOLD

    def override(
        self,
        structural: Optional[float] = None,
        transition: Optional[float] = None,
        support: Optional[float] = None,
    ) -> "Tolerances":
        """
        Copy with the given values replaced.

        Args:
            structural: New structural tolerance.
            transition: New transition tolerance.
            support: New support threshold.

        Returns:
            The updated tolerances.
        """
        changes = {"structural": structural, "transition": transition, "support": support}
        return replace(self, **{name: value for name, value in changes.items() if value is not None})
