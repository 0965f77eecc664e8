# pylint: disable=missing-docstring, missing-return-doc, missing-param-doc, disallowed-name, missing-return-type-doc

import numpy as np
import pytest

from cmcopula.chain import (
    FactorScenario,
    GeneratorPath,
    NegativeOffDiagonalError,
    NotSquareError,
    RatePath,
    RowSumNonzeroError,
    ScenarioError,
    as_rate_path,
    complete_diagonal,
    validate_generator,
)
from tests.unit.fixtures import switching, unit_scenario


def test_validate_generator_accepts_intensity_matrix():
    generator = validate_generator(switching(1.0, 2.0))

    np.testing.assert_array_equal(generator.exit_rates, [1.0, 2.0])
    assert generator.max_exit_rate == 2.0


def test_validate_generator_reports_row_sum_witness():
    with pytest.raises(RowSumNonzeroError) as error:
        validate_generator([[-1.0, 1.0], [0.5, 0.0]])

    assert error.value.row == 1
    assert "Row 1" in str(error.value)


def test_validate_generator_rejects_negative_off_diagonal():
    with pytest.raises(NegativeOffDiagonalError):
        validate_generator([[1.0, -1.0], [0.0, 0.0]])


def test_validate_generator_rejects_non_square():
    with pytest.raises(NotSquareError):
        validate_generator(np.zeros((2, 3)))


def test_rounding_noise_is_clipped():
    generator = validate_generator([[-1.0, 1.0, -1e-14], [0.0, 0.0, 0.0], [0.0, 0.0, 0.0]])

    assert generator.entries[0, 2] == 0.0


@pytest.mark.parametrize("seed", range(20))
def test_complete_diagonal_always_yields_generator(seed):
    matrix = np.random.default_rng(seed).uniform(0.0, 10.0, size=(3, 3))

    generator = validate_generator(complete_diagonal(matrix), tol=1e-9)

    np.testing.assert_allclose(generator.entries.sum(axis=1), 0.0, atol=1e-9)


def test_constant_path_repeats_generator():
    scenario = unit_scenario()
    path = GeneratorPath.constant(scenario, switching(1.0, 2.0))

    assert path.n_cells == scenario.n_cells == 20
    np.testing.assert_array_equal(path.at(0.5).entries, switching(1.0, 2.0))


def test_path_rule_sees_only_observed_history():
    scenario = FactorScenario.from_times([0.0, 0.5, 1.0], [1.0, 3.0, 100.0])
    seen = []

    def rule(t, times, values):
        seen.append((t, times.max(), values.max()))
        return switching(values[-1, 0], 0.0)

    path = GeneratorPath.from_rule(scenario, rule)

    assert seen == [(0.0, 0.0, 1.0), (0.5, 0.5, 3.0)]
    np.testing.assert_array_equal(path.stacked()[:, 0, 1], [1.0, 3.0])


def test_path_needs_one_generator_per_cell():
    with pytest.raises(ScenarioError):
        GeneratorPath.from_matrices(unit_scenario(), [switching(1.0, 1.0)])


def test_uniform_scenario_shortens_last_cell():
    scenario = FactorScenario.uniform(1.0, 0.3)

    np.testing.assert_allclose(scenario.grid, [0.0, 0.3, 0.6, 0.9, 1.0])
    assert scenario.cell_of(1.0) == 3
    assert scenario.grid_index(0.6) == 2
    assert scenario.grid_index(0.65) is None


@pytest.mark.parametrize("grid", [[0.0], [0.1, 1.0], [0.0, 0.5, 0.5]])
def test_invalid_grid_is_rejected(grid):
    with pytest.raises(ScenarioError):
        FactorScenario.from_times(grid)


def test_rate_from_factor_uses_left_point_and_clips():
    scenario = FactorScenario.from_times([0.0, 1.0, 2.0], [2.0, -5.0, 7.0])
    rate = RatePath.from_factor(scenario, offset=1.0, scale=1.0)

    np.testing.assert_array_equal(rate.values, [3.0, 0.0])
    assert rate.integral(0.5, 2.0) == pytest.approx(1.5)


def test_scalar_rate_becomes_constant_path():
    scenario = unit_scenario()
    rate = as_rate_path(0.5, scenario)

    assert rate.integral(0.0, 1.0) == pytest.approx(0.5)
