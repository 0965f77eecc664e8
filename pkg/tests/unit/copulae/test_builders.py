# pylint: disable=missing-docstring, missing-return-doc, missing-param-doc, disallowed-name, missing-return-type-doc

import numpy as np
import pytest

from cmcopula.chain import GeneratorPath, InitialLaw, RatePath, kron_sum
from cmcopula.copulae import (
    ConstraintViolatedError,
    CopulaKind,
    HeterogeneousMarginalsError,
    InitialCouplingError,
    InitialProvenance,
    MarginalSpec,
    MarginalTarget,
    NonPositiveRateError,
    build_common_jump,
    build_conditional_independence,
    build_perfect_dependence,
    build_weak_only,
    joint_jumps,
    joint_jumps_version,
)
from cmcopula.kolmogorov import NegativeRateError
from tests.unit.fixtures import absorbing, absorbing_spec, factor_scenario, switching, unit_scenario


def test_conditional_independence_is_kronecker_sum():
    spec = absorbing_spec((1.0, 2.0))

    candidate = build_conditional_independence(spec)

    assert candidate.kind == CopulaKind.CONDITIONAL_INDEPENDENCE
    assert candidate.provenance == InitialProvenance.PRODUCT
    np.testing.assert_array_equal(candidate.generator[0], kron_sum(absorbing(1.0), absorbing(2.0)).entries)
    np.testing.assert_array_equal(candidate.model.initial.probs, [1.0, 0.0, 0.0, 0.0])


def test_conditional_independence_accepts_coupled_initial_law():
    scenario = unit_scenario()
    target = MarginalTarget.absorbing(scenario, 1.0, [0.5, 0.5])
    spec = MarginalSpec.replicate(target, 2)

    candidate = build_conditional_independence(spec, initial=[0.5, 0.0, 0.0, 0.5])

    assert candidate.provenance == InitialProvenance.SUPPLIED
    with pytest.raises(InitialCouplingError) as error:
        build_conditional_independence(spec, initial=[1.0, 0.0, 0.0, 0.0])
    assert error.value.k == 0


def test_conditional_independence_of_three_components():
    scenario = unit_scenario()
    spec = MarginalSpec(
        (
            MarginalTarget(GeneratorPath.constant(scenario, switching(1.0, 1.0)), [1.0, 0.0]),
            MarginalTarget.absorbing(scenario, 0.5),
            MarginalTarget(GeneratorPath.constant(scenario, np.zeros((3, 3))), [0.2, 0.3, 0.5]),
        )
    )

    candidate = build_conditional_independence(spec)

    assert candidate.model.space.components == (2, 2, 3)
    np.testing.assert_allclose(candidate.model.initial.marginal(candidate.model.space, 2), [0.2, 0.3, 0.5])


@pytest.mark.parametrize("c", [0.0, 0.25, 0.5])
def test_common_jump_generator(c):
    candidate = build_common_jump(unit_scenario(), 1.0, 2.0, c)

    np.testing.assert_allclose(
        candidate.generator[4],
        [
            [-(3.0 - c), 2.0 - c, 1.0 - c, c],
            [0.0, -1.0, 0.0, 1.0],
            [0.0, 0.0, -2.0, 2.0],
            [0.0, 0.0, 0.0, 0.0],
        ],
    )
    assert set(candidate.rates) == {"a", "b", "c"}


@pytest.mark.parametrize("c", [-0.1, 1.5])
def test_common_jump_rate_is_bounded(c):
    with pytest.raises(ConstraintViolatedError) as error:
        build_common_jump(unit_scenario(), 1.0, 2.0, c)

    assert error.value.bound == 1.0


def test_common_jump_with_time_varying_rates():
    scenario = factor_scenario()
    a = RatePath.from_factor(scenario, offset=0.5)
    c = RatePath(scenario, 0.5 * a.values)

    candidate = build_common_jump(scenario, a, 3.0, c)

    np.testing.assert_allclose(candidate.generator[:, 0, 3], c.values)


def test_perfect_dependence_moves_along_diagonal():
    scenario = unit_scenario()
    target = MarginalTarget(GeneratorPath.constant(scenario, switching(1.0, 2.0)), [0.25, 0.75])

    candidate = build_perfect_dependence(MarginalSpec.replicate(target, 2))

    generator = candidate.generator[0]
    np.testing.assert_allclose(generator[0], [-1.0, 0.0, 0.0, 1.0])
    np.testing.assert_allclose(generator[3], [2.0, 0.0, 0.0, -2.0])
    np.testing.assert_allclose(candidate.model.initial.probs, [0.25, 0.0, 0.0, 0.75])
    assert candidate.provenance == InitialProvenance.SUPPLIED


def test_perfect_dependence_of_three_copies():
    scenario = unit_scenario()
    target = MarginalTarget(GeneratorPath.constant(scenario, switching(1.0, 2.0)), [1.0, 0.0])

    candidate = build_perfect_dependence(MarginalSpec.replicate(target, 3))

    space = candidate.model.space
    generator = candidate.generator[0]
    assert generator[space.flat_index((0, 0, 0)), space.flat_index((1, 1, 1))] == 1.0
    np.testing.assert_allclose(generator.sum(axis=1), 0.0, atol=1e-12)


def test_perfect_dependence_needs_identical_targets():
    scenario = unit_scenario()
    spec = MarginalSpec(
        (MarginalTarget.absorbing(scenario, 1.0), MarginalTarget.absorbing(scenario, 2.0))
    )

    with pytest.raises(HeterogeneousMarginalsError):
        build_perfect_dependence(spec)


def test_weak_only_generator_and_implied_targets(weak_only_candidate):
    generator = weak_only_candidate.generator[0]

    np.testing.assert_allclose(generator[0], [-3.0, 1.0, 1.0, 1.0])
    assert weak_only_candidate.kind == CopulaKind.WEAK_ONLY
    first = weak_only_candidate.spec.targets[0].intensity.stacked()[:, 0, 1]
    assert np.all(np.diff(first) < 0)
    assert 1.0 < first[-1] < first[0] < 2.0


def test_weak_only_without_joint_jumps_has_constant_targets():
    candidate = build_weak_only(unit_scenario(), 1.0, 2.0, 0.0)

    np.testing.assert_allclose(candidate.spec.targets[1].intensity.stacked()[:, 0, 1], 2.0, atol=1e-12)


def test_weak_only_rejects_bad_rates():
    with pytest.raises(NonPositiveRateError):
        build_weak_only(unit_scenario(), 0.0, 1.0, 1.0)
    with pytest.raises(NegativeRateError):
        build_weak_only(unit_scenario(), 1.0, 1.0, -0.5)


def test_joint_jump_versions_agree_on_diagonal_rows():
    scenario = unit_scenario()
    original = joint_jumps(scenario, 1.0, 2.0).generator
    version = joint_jumps_version(scenario, 1.0, 2.0).generator

    np.testing.assert_array_equal(original[:, [0, 3]], version[:, [0, 3]])
    np.testing.assert_array_equal(original[:, 1], 0.0)
    np.testing.assert_allclose(version[0, 1], [2.0, -3.0, 0.0, 1.0])


def test_joint_jumps_accept_initial_law():
    candidate = joint_jumps(unit_scenario(), 1.0, 2.0, initial=InitialLaw(np.array([0.5, 0.0, 0.0, 0.5])))

    assert candidate.provenance == InitialProvenance.SUPPLIED
