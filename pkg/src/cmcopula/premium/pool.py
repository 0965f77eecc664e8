from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
import pandas as pd
from tabulate import tabulate

from cmcopula.chain import DimensionMismatchError, State
from cmcopula.copulae import CopulaCandidate
from cmcopula.kolmogorov import OffGridTimeError

EMPLOYED = 0
UNEMPLOYED = 1


@dataclass(frozen=True, eq=False)
class PoolModel:
    """
    Pool of insured individuals whose employment states (0 employed, 1 unemployed) follow a copula.

    Args:
        candidate: The joint model of the pool.
        discount_rate: Continuously compounded rate r, per year.
        benefit_rate: Benefit paid per year of unemployment.
        evaluation_time: Time t at which premia are set; a grid point.
    """

    candidate: CopulaCandidate
    discount_rate: float = 0.0
    benefit_rate: float = 1.0
    evaluation_time: float = 0.0

    def __post_init__(self) -> None:
        for k, size in enumerate(self.candidate.model.space.components):
            if size != 2:
                raise DimensionMismatchError(2, size, f"size of component {k}")
        if self.discount_rate < 0:
            raise ValueError(f"Discount rate must be nonnegative, got {self.discount_rate}.")
        if self.benefit_rate < 0:
            raise ValueError(f"Benefit rate must be nonnegative, got {self.benefit_rate}.")
        if self.candidate.model.scenario.grid_index(self.evaluation_time) is None:
            raise OffGridTimeError(self.evaluation_time)

    @property
    def n_individuals(self) -> int:
        """
        Number of individuals N.
        """
        return self.candidate.model.space.n_components

    @property
    def horizon(self) -> float:
        """
        End of cover T.
        """
        return self.candidate.model.scenario.horizon

    @property
    def max_premium(self) -> float:
        """
        Upper bound (T - t) times the benefit rate.
        """
        return (self.horizon - self.evaluation_time) * self.benefit_rate


@dataclass(frozen=True)
class PremiumEntry:
    """
    Premium of one individual given one observed stratum.

    `filtration` is "individual" when only the individual's own state is observed (stratum of length
    one) and "pool" when the whole pool state is observed.
    """

    component: int
    filtration: str
    stratum: State
    premium: float
    standard_error: float
    count: int


@dataclass
class PremiumQuote:
    """
    Premia of every individual under individual and pool information.

    Args:
        method: "monte-carlo" or "closed-form".
        evaluation_time: Time t of the quote.
        entries: One entry per (individual, filtration, stratum) with enough paths.
        excluded: Strata dropped for lack of paths (or of probability).
        n_paths: Number of simulated paths, for Monte Carlo quotes.
        seed: Master seed, for Monte Carlo quotes.
    """

    method: str
    evaluation_time: float
    entries: List[PremiumEntry] = field(default_factory=list)
    excluded: List[Tuple[int, str, State]] = field(default_factory=list)
    n_paths: Optional[int] = None
    seed: Optional[int] = None

    def individual(self, k: int, y_k: int) -> PremiumEntry:
        """
        Premium of individual k given its own state.

        Args:
            k: Individual.
            y_k: Its observed state.

        Returns:
            The entry.

        Raises:
            KeyError: If the stratum was excluded.
        """
        return self.find(k, "individual", (y_k,))

    def pool(self, k: int, state: State) -> PremiumEntry:
        """
        Premium of individual k given the pool state.

        Args:
            k: Individual.
            state: Observed pool state.

        Returns:
            The entry.

        Raises:
            KeyError: If the stratum was excluded.
        """
        return self.find(k, "pool", tuple(state))

    def gaps(self, k: int) -> Dict[State, float]:
        """
        Pool premium minus the individual premium of the same own state, per pool stratum.

        Args:
            k: Individual.

        Returns:
            The measured information effect per pool state.
        """
        result = {}
        for entry in self.entries:
            if entry.component != k or entry.filtration != "pool":
                continue
            try:
                own = self.individual(k, entry.stratum[k])
            except KeyError:
                continue
            result[entry.stratum] = entry.premium - own.premium
        return result

    def gap_z_scores(self, k: int) -> Dict[State, float]:
        """
        Gaps measured in units of sqrt(SE_pool^2 + SE_individual^2).

        A gap with both standard errors zero scores 0 when it vanishes and infinity otherwise.

        Args:
            k: Individual.

        Returns:
            The z-score of the gap per pool state.
        """
        scores = {}
        for stratum, gap in self.gaps(k).items():
            error = float(np.hypot(self.pool(k, stratum).standard_error, self.individual(k, stratum[k]).standard_error))
            if error > 0:
                scores[stratum] = gap / error
            else:
                scores[stratum] = 0.0 if gap == 0 else float("inf")
        return scores

    def find(self, k: int, filtration: str, stratum: State) -> PremiumEntry:
        """
        Looks up one entry.

        Args:
            k: Individual.
            filtration: "individual" or "pool".
            stratum: Observed state, a 1-tuple for the individual filtration.

        Returns:
            The entry.

        Raises:
            KeyError: If the stratum was excluded or never priced.
        """
        for entry in self.entries:
            if entry.component == k and entry.filtration == filtration and entry.stratum == stratum:
                return entry
        raise KeyError(f"No {filtration} premium for individual {k} in stratum {stratum}.")

    def to_frame(self) -> pd.DataFrame:
        """
        One row per entry.

        Returns:
            Data frame with columns individual, filtration, stratum, premium, standard_error, count.
        """
        return pd.DataFrame(
            {
                "individual": [entry.component + 1 for entry in self.entries],
                "filtration": [entry.filtration for entry in self.entries],
                "stratum": ["(" + ",".join(map(str, entry.stratum)) + ")" for entry in self.entries],
                "premium": [entry.premium for entry in self.entries],
                "standard_error": [entry.standard_error for entry in self.entries],
                "count": [entry.count for entry in self.entries],
            }
        )

    def table(self) -> str:
        """
        Human-readable table of the quote.

        Returns:
            The rendered table.
        """
        return tabulate(self.to_frame(), headers="keys", tablefmt="github", showindex=False, floatfmt=".6f")

    def to_dict(self) -> Dict[str, Any]:
        """
        JSON-ready form.

        Returns:
            Dictionary with the entries, exclusions and measured gaps.
        """
        individuals = sorted({entry.component for entry in self.entries})
        return {
            "method": self.method,
            "evaluation_time": self.evaluation_time,
            "n_paths": self.n_paths,
            "seed": self.seed,
            "entries": [
                {
                    "individual": entry.component,
                    "filtration": entry.filtration,
                    "stratum": list(entry.stratum),
                    "premium": entry.premium,
                    "standard_error": entry.standard_error,
                    "count": entry.count,
                }
                for entry in self.entries
            ],
            "excluded": [
                {"individual": k, "filtration": filtration, "stratum": list(stratum)}
                for k, filtration, stratum in self.excluded
            ],
            "gaps": {
                str(k): {"(" + ",".join(map(str, state)) + ")": gap for state, gap in self.gaps(k).items()}
                for k in individuals
            },
        }
