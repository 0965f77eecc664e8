from .closed_form import absorbing_transition, closed_form_weak_only, weak_only_marginal_rates
from .exceptions import NegativeRateError, NonFiniteEntriesError, OffGridTimeError, StochasticityError
from .field import StateDistributionPath, TransitionField
from .marginal import ComponentTransitionField, marginal_transition_field
from .solver import (
    check_chapman_kolmogorov,
    distribution_at,
    propagate_cell,
    recover_generator,
    solve_backward,
    solve_forward,
    state_distribution,
)

__all__ = [
    "ComponentTransitionField",
    "NegativeRateError",
    "NonFiniteEntriesError",
    "OffGridTimeError",
    "StateDistributionPath",
    "StochasticityError",
    "TransitionField",
    "absorbing_transition",
    "check_chapman_kolmogorov",
    "closed_form_weak_only",
    "distribution_at",
    "marginal_transition_field",
    "propagate_cell",
    "recover_generator",
    "solve_backward",
    "solve_forward",
    "state_distribution",
    "weak_only_marginal_rates",
]
