"""
Closed-form transition probabilities for the four-state models with absorbing components.

States are ordered (0,0), (0,1), (1,0), (1,1). In the weak-only model component 1 jumps alone at
rate a, component 2 alone at rate b and both together at rate c while in (0,0); afterwards the
remaining component jumps at its own rate (a or b).
"""

from typing import Optional, Sequence, Tuple

import numpy as np

from cmcopula.chain import FactorScenario, RatePath
from cmcopula.chain.rates import RateLike, as_rate_path
from cmcopula.kolmogorov.exceptions import NegativeRateError


def _resolve_scenario(rates: Sequence[RateLike], horizon: float, scenario: Optional[FactorScenario]) -> FactorScenario:
    if scenario is not None:
        return scenario
    for rate in rates:
        if isinstance(rate, RatePath):
            return rate.scenario
    return FactorScenario.from_times([0.0, horizon if horizon > 0 else 1.0])


def _check_nonnegative(name: str, rate: RatePath) -> None:
    negative = np.flatnonzero(rate.values < 0)
    if negative.size:
        cell = int(negative[0])
        raise NegativeRateError(name, cell, float(rate.values[cell]))


def _rates(
    a: RateLike, b: RateLike, c: RateLike, horizon: float, scenario: Optional[FactorScenario]
) -> Tuple[RatePath, RatePath, RatePath]:
    scenario = _resolve_scenario((a, b, c), horizon, scenario)
    paths = (as_rate_path(a, scenario), as_rate_path(b, scenario), as_rate_path(c, scenario))
    for name, path in zip("abc", paths):
        _check_nonnegative(name, path)
    return paths


def _one_then_other(first: RatePath, other: RatePath, joint: RatePath, s: float, t: float) -> float:
    """
    Probability of leaving (0,0) by a single jump of rate `first` during [s, t] and staying in the
    reached state, whose exit rate is `other`.
    """
    scenario = first.scenario
    overlaps = scenario.overlaps(s, t)
    cells = np.flatnonzero(overlaps > 0)
    if cells.size == 0:
        return 0.0
    # exit rate of (0,0) net of `other`, which is already discounted over the whole interval
    competing = first.values[cells] + joint.values[cells]
    lengths = overlaps[cells]
    before = np.concatenate(([0.0], np.cumsum(competing * lengths)[:-1]))
    with np.errstate(divide="ignore", invalid="ignore"):
        pieces = np.where(competing > 0, -np.expm1(-competing * lengths) / competing, lengths)
    total = float(np.sum(first.values[cells] * np.exp(-before) * pieces))
    return float(np.exp(-other.integral(s, t)) * total)


def closed_form_weak_only(
    a: RateLike,
    b: RateLike,
    c: RateLike,
    s: float,
    t: float,
    scenario: Optional[FactorScenario] = None,
) -> np.ndarray:
    """
    Transition matrix P(s, t) of the weak-only model with rates integrated exactly per cell.

    Row (0,0) is (delta, alpha, beta, gamma) where delta = exp(-int (a+b+c)),
    alpha = int_s^t exp(-int_s^u (a+b+c)) b_u exp(-int_u^t a) du, beta is alpha with a and b swapped and
    gamma is the complement. Rows (0,1) and (1,0) are the absorbing two-state solutions for a and b.

    Args:
        a: Rate of component 1 jumping alone.
        b: Rate of component 2 jumping alone.
        c: Rate of both jumping together.
        s: Start time.
        t: End time.
        scenario: Scenario of scalar or per-cell rates; taken from rate paths when omitted.

    Returns:
        The 4 x 4 transition matrix.

    Raises:
        ValueError: If t < s.
    """
    if t < s:
        raise ValueError(f"Need s <= t, got s={s}, t={t}.")
    rate_a, rate_b, rate_c = _rates(a, b, c, t, scenario)
    if t == s:
        return np.eye(4)

    integral_a = rate_a.integral(s, t)
    integral_b = rate_b.integral(s, t)
    delta = float(np.exp(-(integral_a + integral_b + rate_c.integral(s, t))))
    # alpha: component 2 jumps first (rate b), then component 1 stays at rate a
    alpha = _one_then_other(rate_b, rate_a, rate_c, s, t)
    beta = _one_then_other(rate_a, rate_b, rate_c, s, t)
    gamma = 1.0 - delta - alpha - beta

    stay_a = float(np.exp(-integral_a))
    stay_b = float(np.exp(-integral_b))
    return np.array(
        [
            [delta, alpha, beta, gamma],
            [0.0, stay_a, 0.0, 1.0 - stay_a],
            [0.0, 0.0, stay_b, 1.0 - stay_b],
            [0.0, 0.0, 0.0, 1.0],
        ]
    )


def absorbing_transition(a: RateLike, s: float, t: float, scenario: Optional[FactorScenario] = None) -> np.ndarray:
    """
    Transition matrix of the two-state chain 0 -> 1 at rate a with 1 absorbing.

    Args:
        a: The jump rate.
        s: Start time.
        t: End time.
        scenario: Scenario of a scalar or per-cell rate.

    Returns:
        [[e^{-A}, 1 - e^{-A}], [0, 1]] with A the integral of a over [s, t].
    """
    rate = as_rate_path(a, _resolve_scenario((a,), t, scenario))
    _check_nonnegative("a", rate)
    stay = float(np.exp(-rate.integral(s, t)))
    return np.array([[stay, 1.0 - stay], [0.0, 1.0]])


def weak_only_marginal_rates(
    a: RateLike, b: RateLike, c: RateLike, t: float, scenario: Optional[FactorScenario] = None
) -> Tuple[float, float]:
    """
    Implied marginal jump intensities of the weak-only model started in (0,0), at time t.

    Component 1 leaves 0 at rate (a_t + c_t) - c_t alpha(0,t) / (delta(0,t) + alpha(0,t)); component 2
    symmetrically with b and beta. Rates are taken right-continuously, the horizon uses the last cell.

    Args:
        a: Rate of component 1 jumping alone.
        b: Rate of component 2 jumping alone.
        c: Rate of both jumping together.
        t: Evaluation time.
        scenario: Scenario of scalar or per-cell rates.

    Returns:
        Tuple (psi1, psi2) of the off-diagonal marginal intensities.
    """
    rate_a, rate_b, rate_c = _rates(a, b, c, t, scenario)
    row = closed_form_weak_only(rate_a, rate_b, rate_c, 0.0, t)[0]
    delta, alpha, beta = row[0], row[1], row[2]
    a_t, b_t, c_t = rate_a.at(t), rate_b.at(t), rate_c.at(t)
    psi1 = (a_t + c_t) - c_t * alpha / (delta + alpha)
    psi2 = (b_t + c_t) - c_t * beta / (delta + beta)
    return float(psi1), float(psi2)
