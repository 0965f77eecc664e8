# pylint: disable=missing-docstring, missing-return-doc, missing-param-doc, disallowed-name, missing-return-type-doc

import numpy as np
import pytest

from cmcopula.copulae import WrongKindError, build_common_jump, decompose_weak_only
from tests.unit.fixtures import unit_scenario, weak_only


def test_decomposition_reconstructs_generator(weak_only_candidate):
    decomposition = decompose_weak_only(weak_only_candidate)

    assert decomposition.reconstruction_error <= 1e-10
    np.testing.assert_allclose(decomposition.joint[:, 0, 3], 1.0)
    np.testing.assert_allclose(decomposition.joint[:, 0, 0], -1.0)


def test_corrections_vanish_without_joint_jumps():
    decomposition = decompose_weak_only(weak_only(0.0))

    np.testing.assert_allclose(decomposition.first_excess, 0.0, atol=1e-12)
    np.testing.assert_allclose(decomposition.second_excess, 0.0, atol=1e-12)
    assert decomposition.reconstruction_error <= 1e-12


def test_excess_rates_are_implied_minus_own_rates(weak_only_candidate):
    decomposition = decompose_weak_only(weak_only_candidate)
    implied = weak_only_candidate.spec.targets[0].intensity.stacked()[:, 0, 1]

    np.testing.assert_allclose(decomposition.second_excess[:, 0, 2], implied - 1.0)
    np.testing.assert_allclose(decomposition.second_excess[:, 1, 3], implied - 1.0)
    np.testing.assert_allclose(decomposition.second_excess[:, 2, :], 0.0)


def test_decomposition_needs_weak_only_candidate():
    with pytest.raises(WrongKindError):
        decompose_weak_only(build_common_jump(unit_scenario(), 1.0, 1.0, 0.5))


def test_decomposition_serializes_named_blocks(weak_only_candidate):
    payload = decompose_weak_only(weak_only_candidate).to_dict()

    assert {"kron_part", "B12", "B1", "B2", "reconstruction_error"} <= set(payload)
