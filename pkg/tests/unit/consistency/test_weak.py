# pylint: disable=missing-docstring, missing-return-doc, missing-param-doc, disallowed-name, missing-return-type-doc

import numpy as np
import pytest

from cmcopula.chain import CmcModel, ProductStateSpace
from cmcopula.consistency import (
    SupportViolationError,
    Verdict,
    certify_weak_only,
    check_consistency,
    check_wm_necessary,
    weak_marginal_intensity,
)
from cmcopula.kolmogorov import weak_only_marginal_rates
from tests.unit.fixtures import unit_scenario, weak_only


def test_weak_marginal_matches_closed_form_rates(weak_only_candidate):
    model = weak_only_candidate.model

    marginal = weak_marginal_intensity(model, 0)

    for cell, midpoint in enumerate(model.scenario.midpoints):
        psi1, _ = weak_only_marginal_rates(1.0, 1.0, 1.0, float(midpoint), model.scenario)
        assert marginal.rate(cell, 0, 1) == pytest.approx(psi1, abs=1e-10)
    np.testing.assert_allclose(marginal.stacked()[:, 1, :], 0.0, atol=1e-12)


def test_weak_marginal_at_custom_times(weak_only_candidate):
    model = weak_only_candidate.model
    lefts = model.scenario.grid[:-1]

    marginal = weak_marginal_intensity(model, 1, times=lefts, strict=False)

    assert marginal.rate(0, 0, 1) == pytest.approx(2.0)
    assert marginal.flagged == ((0, 1),)
    np.testing.assert_array_equal(marginal.times, lefts)


def test_weak_marginal_needs_positive_component_probability():
    scenario = unit_scenario()
    space = ProductStateSpace((2, 2))
    model = CmcModel.constant(space, scenario, np.zeros((4, 4)))

    with pytest.raises(SupportViolationError):
        weak_marginal_intensity(model, 0)

    relaxed = weak_marginal_intensity(model, 0, strict=False)
    assert relaxed.flagged


def test_weak_condition_is_not_applicable_without_support():
    scenario = unit_scenario()
    space = ProductStateSpace((2, 2))
    model = CmcModel.constant(space, scenario, np.zeros((4, 4)))

    report = check_wm_necessary(model, 0)

    assert report.verdict("WM") == Verdict.NOT_APPLICABLE


def test_weak_condition_compares_with_target(weak_only_candidate):
    target = weak_only_candidate.spec.targets[0].intensity

    assert check_wm_necessary(weak_only_candidate.model, 0, target=target).verdict("WM") == Verdict.PASS

    wrong = weak_only(1.0, a=2.0).spec.targets[0].intensity
    report = check_wm_necessary(weak_only_candidate.model, 0, target=wrong)
    assert report.verdict("WM") == Verdict.FAIL
    assert report.witnesses[0].x_bar is None


def test_weak_only_model_is_certified(weak_only_candidate):
    verdict = certify_weak_only(weak_only_candidate.model, 0)

    assert verdict.certified
    s, t, x, x_bar = verdict.witness
    assert s < t
    assert x[0] == x_bar[0] == 0
    assert verdict.spread > 1e-3


def test_model_without_joint_jumps_is_not_certified():
    verdict = certify_weak_only(weak_only(0.0).model, 0)

    assert not verdict.certified
    assert verdict.spread < 1e-8


def test_consistency_report_of_weak_only_model(weak_only_candidate):
    report = check_consistency(weak_only_candidate.model, 0)

    assert report.verdicts == {"ASM-1": Verdict.FAIL, "SM-1": Verdict.FAIL, "WM-1": Verdict.PASS}
    assert not report.passed
    payload = report.to_dict()
    assert payload["component"] == 0
    assert payload["verdicts"]["WM-1"] == "pass"
