# pylint: disable=missing-docstring, missing-return-doc, missing-param-doc, disallowed-name, missing-return-type-doc

import numpy as np
import pytest

from cmcopula.chain import RatePath
from cmcopula.copulae import build_weak_only
from cmcopula.kolmogorov import (
    NegativeRateError,
    absorbing_transition,
    closed_form_weak_only,
    solve_forward,
    weak_only_marginal_rates,
)
from tests.unit.fixtures import factor_scenario, unit_scenario


def test_forward_solution_matches_closed_form_on_grid(weak_only_candidate):
    scenario = weak_only_candidate.model.scenario
    field = solve_forward(weak_only_candidate.model)

    for j, t in enumerate(scenario.grid):
        np.testing.assert_allclose(
            field.from_origin[j], closed_form_weak_only(1.0, 1.0, 1.0, 0.0, float(t), scenario), atol=1e-8
        )


def test_closed_form_row_at_horizon():
    row = closed_form_weak_only(1.0, 1.0, 1.0, 0.0, 1.0, unit_scenario())[0]

    assert row[0] == pytest.approx(np.exp(-3.0), abs=1e-12)
    assert row[1] == pytest.approx(np.exp(-1.0) * (1.0 - np.exp(-2.0)) / 2.0, abs=1e-10)
    assert row[1] == pytest.approx(row[2])
    assert row.sum() == pytest.approx(1.0)


def test_closed_form_with_time_varying_rates():
    scenario = factor_scenario()
    a = RatePath.from_factor(scenario, offset=0.2, scale=0.5)
    b = RatePath.constant(scenario, 0.3)
    c = RatePath.from_factor(scenario, offset=0.0, scale=0.25)
    field = solve_forward(build_weak_only(scenario, a, b, c).model)

    for s, t in [(0.0, 1.0), (0.2, 0.7), (0.35, 0.85)]:
        np.testing.assert_allclose(field.at(s, t), closed_form_weak_only(a, b, c, s, t), atol=1e-8)


def test_absorbing_transition():
    np.testing.assert_allclose(
        absorbing_transition(2.0, 0.25, 0.75, unit_scenario()), [[np.exp(-1.0), 1 - np.exp(-1.0)], [0.0, 1.0]]
    )


def test_closed_form_rejects_negative_rates():
    with pytest.raises(NegativeRateError):
        closed_form_weak_only(1.0, -1.0, 1.0, 0.0, 1.0, unit_scenario())


def test_closed_form_rejects_reversed_interval():
    with pytest.raises(ValueError):
        closed_form_weak_only(1.0, 1.0, 1.0, 0.5, 0.25, unit_scenario())


def test_implied_marginal_rate_at_horizon():
    psi1, psi2 = weak_only_marginal_rates(1.0, 1.0, 1.0, 1.0, unit_scenario())

    delta = np.exp(-3.0)
    alpha = np.exp(-1.0) * (1.0 - np.exp(-2.0)) / 2.0
    assert psi1 == pytest.approx(2.0 - alpha / (delta + alpha), abs=1e-10)
    assert psi1 == pytest.approx(1.2385, abs=1e-3)
    assert psi2 == pytest.approx(psi1)


def test_implied_marginal_rate_without_joint_jumps_is_own_rate():
    psi1, psi2 = weak_only_marginal_rates(1.0, 2.0, 0.0, 0.6, unit_scenario())

    assert (psi1, psi2) == pytest.approx((1.0, 2.0))


def test_implied_marginal_rate_starts_at_a_plus_c():
    psi1, _ = weak_only_marginal_rates(1.0, 1.0, 1.0, 0.0, unit_scenario())

    assert psi1 == pytest.approx(2.0)
