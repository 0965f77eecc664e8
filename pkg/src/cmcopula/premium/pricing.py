import logging
from typing import List, Optional, Tuple

import numpy as np
from scipy.linalg import expm

from cmcopula.audit import EventTracker, PricingEvent
from cmcopula.chain import State
from cmcopula.copulae import CopulaKind
from cmcopula.kolmogorov import distribution_at
from cmcopula.montecarlo import InsufficientSamplesError, simulate
from cmcopula.premium.exceptions import UnsupportedKindError
from cmcopula.premium.pool import UNEMPLOYED, PoolModel, PremiumEntry, PremiumQuote

logger = logging.getLogger(__name__)

MIN_STRATUM = 2
PROBABILITY_EPS = 1e-12


def _entry(k: int, filtration: str, stratum: State, payoffs: np.ndarray) -> PremiumEntry:
    error = float(payoffs.std(ddof=1) / np.sqrt(payoffs.size)) if payoffs.size > 1 else 0.0
    return PremiumEntry(k, filtration, stratum, float(payoffs.mean()), error, int(payoffs.size))


def price(
    pool: PoolModel,
    n_paths: int,
    seed: int,
    min_stratum: int = MIN_STRATUM,
    event_tracker: Optional[EventTracker] = None,
) -> PremiumQuote:
    """
    Monte Carlo premia under individual and pool information.

    The payoff of individual k is the discounted benefit paid while unemployed after t,
    benefit * int_t^T e^{-r (u - t)} 1{Y^k_u = 1} du. Conditioning on the individual's state
    (or on the pool state) at t is done by averaging the payoff over the paths in that stratum.

    Args:
        pool: The pool.
        n_paths: Number of paths.
        seed: Master seed.
        min_stratum: Smallest stratum that gets a premium; smaller ones are excluded.
        event_tracker: Tracker notified about the pricing run.

    Returns:
        The quote.

    Raises:
        InsufficientSamplesError: If some individual has no stratum with `min_stratum` paths.
    """
    tracker = EventTracker.resolve(event_tracker)
    event = PricingEvent(kind=pool.candidate.kind.value, method="monte-carlo", n_paths=n_paths, seed=seed)

    with tracker.track_event(event) as span:
        model = pool.candidate.model
        bundle = simulate(model, n_paths, seed, event_tracker=tracker)
        t = pool.evaluation_time
        states = bundle.states_at(t)
        coordinates = model.space.coordinates[states]
        quote = PremiumQuote(method="monte-carlo", evaluation_time=t, n_paths=n_paths, seed=seed)

        for k in range(pool.n_individuals):
            payoffs = pool.benefit_rate * bundle.discounted_occupation(k, UNEMPLOYED, t, pool.discount_rate)
            strata: List[Tuple[str, State, np.ndarray]] = [
                ("individual", (y_k,), coordinates[:, k] == y_k) for y_k in range(2)
            ]
            strata += [("pool", state, states == x) for x, state in enumerate(model.space.states())]
            priced = 0
            for filtration, stratum, mask in strata:
                if mask.sum() < min_stratum:
                    quote.excluded.append((k, filtration, stratum))
                    continue
                quote.entries.append(_entry(k, filtration, stratum, payoffs[mask]))
                priced += filtration == "individual"
            if priced == 0:
                raise InsufficientSamplesError(f"Y^{k + 1}_t", int(n_paths), min_stratum)

        if quote.excluded:
            logger.info("Excluded %d strata with fewer than %d paths", len(quote.excluded), min_stratum)
        event.strata = len(quote.entries)
        event.excluded = len(quote.excluded)
        span(event)

    return quote


def _check_supported(pool: PoolModel) -> None:
    candidate = pool.candidate
    if candidate.kind in (CopulaKind.COMMON_JUMP, CopulaKind.WEAK_ONLY):
        return
    if candidate.kind == CopulaKind.CONDITIONAL_INDEPENDENCE and candidate.spec is not None:
        absorbing = all(
            np.all(target.intensity.stacked()[:, UNEMPLOYED, :] == 0.0) for target in candidate.spec.targets
        )
        if absorbing:
            return
    raise UnsupportedKindError(candidate.kind.value)


def discounted_field(generator: np.ndarray, length: float, rate: float) -> Tuple[np.ndarray, np.ndarray]:
    """
    Propagator of one cell together with its discounted time integral.

    The integral int_0^h e^{-r v} e^{v Lambda} dv is the upper right block of the exponential of
    [[Lambda - r I, I], [0, 0]] h.

    Args:
        generator: Cell intensity Lambda.
        length: Cell length h.
        rate: Discount rate r.

    Returns:
        Tuple (exp(h Lambda), discounted integral).
    """
    d = generator.shape[0]
    block = np.zeros((2 * d, 2 * d))
    block[:d, :d] = generator - rate * np.eye(d)
    block[:d, d:] = np.eye(d)
    exponential = expm(length * block)
    return expm(length * generator), exponential[:d, d:]


def price_closed_form(pool: PoolModel, event_tracker: Optional[EventTracker] = None) -> PremiumQuote:
    """
    Premia from the transition field, without sampling.

    Given the pool state x at t, the premium of individual k is
    benefit * sum_y int_t^T e^{-r (u - t)} P(t, u)_{xy} 1{y^k = 1} du, integrated exactly cell by cell.
    Individual premia average the pool premia with the law of Y_t restricted to the observed own state.

    Args:
        pool: The pool.
        event_tracker: Tracker notified about the pricing run.

    Returns:
        The quote; standard errors are zero and counts are -1.

    Raises:
        UnsupportedKindError: If the candidate is not one of the supported kinds.
    """
    _check_supported(pool)
    tracker = EventTracker.resolve(event_tracker)
    event = PricingEvent(kind=pool.candidate.kind.value, method="closed-form")

    with tracker.track_event(event) as span:
        model = pool.candidate.model
        scenario = model.scenario
        t = pool.evaluation_time
        start = scenario.grid_index(t)
        d = model.dimension

        transition = np.eye(d)
        occupation = np.zeros((d, d))
        for cell in range(start, scenario.n_cells):
            discount = np.exp(-pool.discount_rate * (scenario.grid[cell] - t))
            propagator, integral = discounted_field(
                model.generator.cells[cell].entries, float(scenario.cell_lengths[cell]), pool.discount_rate
            )
            occupation += discount * transition @ integral
            transition = transition @ propagator

        law = distribution_at(model, t)
        quote = PremiumQuote(method="closed-form", evaluation_time=t)
        for k in range(pool.n_individuals):
            unemployed = model.space.coordinates[:, k] == UNEMPLOYED
            premia = pool.benefit_rate * occupation[:, unemployed].sum(axis=1)
            for y_k in range(2):
                own = model.space.coordinates[:, k] == y_k
                mass = float(law[own].sum())
                if mass <= PROBABILITY_EPS:
                    quote.excluded.append((k, "individual", (y_k,)))
                    continue
                value = float(law[own] @ premia[own] / mass)
                quote.entries.append(PremiumEntry(k, "individual", (y_k,), value, 0.0, -1))
            for x, state in enumerate(model.space.states()):
                if law[x] <= PROBABILITY_EPS:
                    quote.excluded.append((k, "pool", state))
                    continue
                quote.entries.append(PremiumEntry(k, "pool", state, float(premia[x]), 0.0, -1))

        event.strata = len(quote.entries)
        event.excluded = len(quote.excluded)
        span(event)

    return quote
