import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Literal, Optional

import numpy as np
import pandas as pd
from numpy.typing import ArrayLike
from scipy import stats

from cmcopula.chain import CmcModel
from cmcopula.montecarlo.exceptions import InsufficientSamplesError
from cmcopula.montecarlo.paths import PathBundle

logger = logging.getLogger(__name__)

Z_THRESHOLD = 4.0
P_THRESHOLD = 1e-4
MIN_BUCKET = 30

Stratification = Literal["history", "full"]


@dataclass
class EstimatorReport:
    """
    Point estimates with standard errors and, when a reference exists, z-scores against it.

    Args:
        name: What was estimated.
        estimates: Point estimates.
        standard_errors: Standard errors of the estimates.
        reference: Reference values the estimates are compared with.
        z_scores: Standardised deviations from the reference.
        statistic: Test statistic, for tests.
        dof: Degrees of freedom of the statistic.
        p_value: p-value of the statistic.
        details: Extra named values.
    """

    name: str
    estimates: np.ndarray
    standard_errors: np.ndarray
    reference: Optional[np.ndarray] = None
    z_scores: Optional[np.ndarray] = None
    statistic: Optional[float] = None
    dof: Optional[int] = None
    p_value: Optional[float] = None
    details: Dict[str, Any] = field(default_factory=dict)

    @property
    def max_abs_z(self) -> float:
        """
        Largest absolute z-score, zero when there are none.
        """
        if self.z_scores is None or self.z_scores.size == 0:
            return 0.0
        return float(np.max(np.abs(self.z_scores)))

    def passed(self, z_threshold: float = Z_THRESHOLD, p_threshold: float = P_THRESHOLD) -> bool:
        """
        True when no z-score exceeds the threshold and the p-value, if any, is above its threshold.

        Args:
            z_threshold: Largest acceptable |z|.
            p_threshold: Smallest acceptable p-value.

        Returns:
            Whether the estimates are consistent with the reference.
        """
        if self.max_abs_z > z_threshold:
            return False
        return self.p_value is None or self.p_value > p_threshold

    def to_dict(self) -> Dict[str, Any]:
        """
        JSON-ready form.

        Returns:
            Dictionary with all fields.
        """

        def listed(array: Optional[np.ndarray]) -> Optional[list]:
            return None if array is None else np.asarray(array).tolist()

        return {
            "name": self.name,
            "estimates": listed(self.estimates),
            "standard_errors": listed(self.standard_errors),
            "reference": listed(self.reference),
            "z_scores": listed(self.z_scores),
            "max_abs_z": self.max_abs_z,
            "statistic": self.statistic,
            "dof": self.dof,
            "p_value": self.p_value,
            "details": self.details,
        }


def _z_scores(estimates: np.ndarray, reference: np.ndarray, errors: np.ndarray) -> np.ndarray:
    difference = estimates - reference
    with np.errstate(divide="ignore", invalid="ignore"):
        z = np.where(errors > 0, difference / errors, np.where(np.abs(difference) > 1e-12, np.inf, 0.0))
    return z


@dataclass
class EmpiricalTransition:
    """
    Relative frequencies of X_t given X_s over the simulated paths.

    Args:
        matrix: Row x holds the frequencies of X_t among paths with X_s = x; unvisited rows are identity rows.
        standard_errors: Binomial standard errors of the entries.
        visits: Number of paths in every starting state.
    """

    s: float
    t: float
    matrix: np.ndarray
    standard_errors: np.ndarray
    visits: np.ndarray

    @property
    def unvisited(self) -> np.ndarray:
        """
        Starting states no path occupied at s.
        """
        return np.flatnonzero(self.visits == 0)

    def compare(self, reference: ArrayLike, rows: Optional[List[int]] = None) -> EstimatorReport:
        """
        z-scores of the frequencies against reference transition probabilities.

        The standard errors use the reference probabilities, so entries the sample never hit still
        get a finite score.

        Args:
            reference: Reference d x d matrix.
            rows: Starting states to compare; every visited state by default.

        Returns:
            The report over the compared rows.
        """
        reference = np.asarray(reference, dtype=float)
        rows = [x for x in (rows if rows is not None else range(self.matrix.shape[0])) if self.visits[x] > 0]
        estimates = self.matrix[rows]
        expected = reference[rows]
        errors = np.sqrt(np.clip(expected * (1.0 - expected), 0.0, None) / self.visits[rows, None])
        return EstimatorReport(
            name=f"transition({self.s:g},{self.t:g})",
            estimates=estimates,
            standard_errors=errors,
            reference=expected,
            z_scores=_z_scores(estimates, expected, errors),
            details={"rows": rows, "visits": self.visits[rows].tolist()},
        )

    def to_frame(self) -> pd.DataFrame:
        """
        Long table of the estimates.

        Returns:
            Data frame with columns from, to, probability, standard_error, visits.
        """
        d = self.matrix.shape[0]
        sources, targets = np.divmod(np.arange(d * d), d)
        return pd.DataFrame(
            {
                "from": sources,
                "to": targets,
                "probability": self.matrix.ravel(),
                "standard_error": self.standard_errors.ravel(),
                "visits": self.visits[sources],
            }
        )


def empirical_transition(bundle: PathBundle, s: float, t: float) -> EmpiricalTransition:
    """
    Empirical transition matrix between two times.

    Args:
        bundle: Simulated paths.
        s: Start time.
        t: End time, t >= s.

    Returns:
        The frequencies; rows sum to one exactly.

    Raises:
        ValueError: If t < s.
    """
    if t < s:
        raise ValueError(f"Need s <= t, got s={s}, t={t}.")
    d = bundle.space.size
    start, end = bundle.states_at(s), bundle.states_at(t)
    counts = np.zeros((d, d), dtype=np.int64)
    np.add.at(counts, (start, end), 1)
    visits = counts.sum(axis=1)
    matrix = np.eye(d)
    visited = visits > 0
    matrix[visited] = counts[visited] / visits[visited, None]
    if not visited.all():
        logger.info("No path visits states %s at s=%g; their rows are set to identity", np.flatnonzero(~visited), s)
    errors = np.zeros((d, d))
    errors[visited] = np.sqrt(matrix[visited] * (1.0 - matrix[visited]) / visits[visited, None])
    return EmpiricalTransition(s=s, t=t, matrix=matrix, standard_errors=errors, visits=visits)


def compensator_residual(bundle: PathBundle, model: CmcModel, x: int, y: int) -> EstimatorReport:
    """
    Mean over paths of the counting process of x -> y jumps minus its compensator, on [0, T].

    Each path contributes C^{xy}(0, T) - sum over cells of lambda^{xy} times the time spent in x on the
    cell. The centred counting process is a martingale, so the mean residual is zero up to noise.

    Args:
        bundle: Paths simulated from `model`.
        model: The model.
        x: Flat state left.
        y: Flat state entered, different from x.

    Returns:
        Report with the mean residual, its standard error and its z-score against zero.

    Raises:
        ValueError: If x == y.
    """
    if x == y:
        raise ValueError("The compensator residual needs two different states.")
    counts = bundle.jump_counts(x, y).astype(float)
    grid = bundle.scenario.grid
    compensator = np.zeros(bundle.n_paths)
    for cell, generator in enumerate(model.generator.cells):
        rate = float(generator.entries[x, y])
        if rate > 0:
            compensator += rate * bundle.occupation(x, float(grid[cell]), float(grid[cell + 1]))

    residuals = counts - compensator
    mean = float(residuals.mean())
    error = float(residuals.std(ddof=1) / np.sqrt(bundle.n_paths)) if bundle.n_paths > 1 else 0.0
    return EstimatorReport(
        name=f"compensator({x}->{y})",
        estimates=np.array([mean]),
        standard_errors=np.array([error]),
        reference=np.array([0.0]),
        z_scores=_z_scores(np.array([mean]), np.array([0.0]), np.array([error])),
        details={"mean_count": float(counts.mean()), "mean_compensator": float(compensator.mean())},
    )


def _history_time(bundle: PathBundle, s: float, lag: Optional[float]) -> float:
    if lag is not None:
        if not 0 < lag <= s:
            raise ValueError(f"History lag must lie in (0, {s}], got {lag}.")
        return s - lag
    index = bundle.scenario.grid_index(s)
    if index is None or index == 0:
        raise ValueError(f"Own-history stratification needs a grid time s > 0 or an explicit lag, got s={s}.")
    return float(bundle.scenario.grid[index - 1])


def _two_proportion_z(table: np.ndarray) -> np.ndarray:
    """
    For every outcome, z-score between the buckets with the highest and lowest frequency.
    """
    sizes = table.sum(axis=1)
    freqs = table / sizes[:, None]
    scores = []
    for column in range(table.shape[1]):
        high, low = int(np.argmax(freqs[:, column])), int(np.argmin(freqs[:, column]))
        pooled = (table[high, column] + table[low, column]) / (sizes[high] + sizes[low])
        error = np.sqrt(pooled * (1.0 - pooled) * (1.0 / sizes[high] + 1.0 / sizes[low]))
        difference = freqs[high, column] - freqs[low, column]
        scores.append(difference / error if error > 0 else 0.0)
    return np.array(scores)


def empirical_weak_markov_test(
    bundle: PathBundle,
    k: int,
    s: float,
    t: float,
    stratify: Stratification = "history",
    lag: Optional[float] = None,
    min_bucket: int = MIN_BUCKET,
) -> EstimatorReport:
    """
    Tests whether the law of X^k_t given X^k_s depends on extra information at time s.

    Paths are grouped by X^k_s and, within each group, bucketed either by the component's own earlier
    state X^k_{s - lag} ("history") or by the full state X_s ("full"). For every group the buckets are
    compared with a chi-square test of homogeneity of X^k_t; statistics and degrees of freedom are
    summed over groups. Two-proportion z-scores between the most different buckets are reported too.
    Buckets with fewer than `min_bucket` paths are dropped. Only two-time stratifications are checked.

    Args:
        bundle: Simulated paths.
        k: Component index.
        s: Conditioning time.
        t: Target time, t > s.
        stratify: "history" for the weak (own filtration) check, "full" for the strong one.
        lag: History lag; the previous grid step by default.
        min_bucket: Smallest bucket kept in the tables.

    Returns:
        Report with the chi-square statistic, its p-value and the z-scores. `details["testable"]` is
        False when no group could be compared, e.g. the own history of an absorbing component, which adds
        nothing to X^k_s; `details["reason"]` then says why and the p-value is 1.

    Raises:
        InsufficientSamplesError: If no group holds `min_bucket` paths.
        ValueError: If t <= s or the stratification is unknown.
    """
    if t <= s:
        raise ValueError(f"Need s < t, got s={s}, t={t}.")
    own_s = bundle.component_states_at(k, s)
    own_t = bundle.component_states_at(k, t)
    if stratify == "history":
        buckets = bundle.component_states_at(k, _history_time(bundle, s, lag))
    elif stratify == "full":
        buckets = bundle.states_at(s)
    else:
        raise ValueError(f"Unknown stratification {stratify!r}; use 'history' or 'full'.")

    n_k = bundle.space.components[k]
    statistic, dof = 0.0, 0
    z_scores: List[np.ndarray] = []
    tables: Dict[str, Any] = {}
    skipped: Dict[str, str] = {}
    largest = 0
    for x_k in range(n_k):
        group = own_s == x_k
        largest = max(largest, int(group.sum()))
        labels, inverse = np.unique(buckets[group], return_inverse=True)
        table = np.zeros((labels.size, n_k), dtype=np.int64)
        np.add.at(table, (inverse, own_t[group]), 1)
        kept = table.sum(axis=1) >= min_bucket
        if (~kept).any():
            logger.debug("Dropping %d sparse buckets of group %d", int((~kept).sum()), x_k)
        table, labels = table[kept], labels[kept]
        table = table[:, table.sum(axis=0) > 0]
        tables[str(x_k)] = {"buckets": labels.tolist(), "counts": table.tolist()}
        if table.shape[0] < 2:
            skipped[str(x_k)] = "one bucket"
            continue
        if table.shape[1] < 2:
            skipped[str(x_k)] = "one outcome"
            continue
        chi2, _, group_dof, _ = stats.chi2_contingency(table, correction=False)
        statistic += float(chi2)
        dof += int(group_dof)
        z_scores.append(_two_proportion_z(table))

    if largest < min_bucket:
        raise InsufficientSamplesError(f"X^{k + 1}_s", largest, min_bucket)

    p_value = float(stats.chi2.sf(statistic, dof)) if dof > 0 else 1.0
    details: Dict[str, Any] = {"tables": tables, "testable": dof > 0}
    if dof == 0:
        groups = ", ".join(f"X^{k + 1}_s={x_k}: {why}" for x_k, why in skipped.items())
        details["reason"] = f"no group has two buckets with two outcomes of X^{k + 1}_t ({groups})"
        logger.info("Markov test of component %d is vacuous: %s", k, details["reason"])
    z = np.concatenate(z_scores) if z_scores else np.zeros(0)
    return EstimatorReport(
        name=f"markov({stratify},k={k},s={s:g},t={t:g})",
        estimates=np.array([statistic]),
        standard_errors=np.array([np.sqrt(2.0 * dof)]),
        z_scores=z,
        statistic=statistic,
        dof=dof,
        p_value=p_value,
        details=details,
    )
