# pylint: disable=missing-docstring, missing-return-doc, missing-param-doc, disallowed-name, missing-return-type-doc

import numpy as np
import pytest
from scipy.linalg import expm

from cmcopula.audit import BufferEventHandler, EventTracker
from cmcopula.chain import CmcModel, GeneratorPath, InitialLaw, ProductStateSpace, kron, kron_sum_path
from cmcopula.kolmogorov import (
    OffGridTimeError,
    check_chapman_kolmogorov,
    distribution_at,
    marginal_transition_field,
    recover_generator,
    solve_backward,
    solve_forward,
    state_distribution,
)
from tests.unit.fixtures import absorbing, factor_scenario, switching, two_state_model, unit_scenario


def _factor_model() -> CmcModel:
    scenario = factor_scenario()
    space = ProductStateSpace.single(3)
    matrices = [
        [[-z, z, 0.0], [0.5, -0.5 - z, z], [0.0, 1.0, -1.0]] for z in scenario.values[:-1, 0]
    ]
    return CmcModel(space, GeneratorPath.from_matrices(scenario, matrices), InitialLaw.point_mass(space, (0,)))


def test_homogeneous_field_is_matrix_exponential():
    model = two_state_model(1.0, 2.0)

    field = solve_forward(model)

    np.testing.assert_allclose(field.matrix(0.0, 1.0), expm(switching(1.0, 2.0)), atol=1e-12)
    np.testing.assert_allclose(field.matrix(0.35, 0.35), np.eye(2))


def test_ode_method_agrees_with_exponentials():
    model = _factor_model()

    exact = solve_forward(model)
    numeric = solve_forward(model, method="ode")

    np.testing.assert_allclose(numeric.from_origin, exact.from_origin, atol=1e-9)


def test_backward_and_forward_fields_coincide():
    model = _factor_model()

    forward = solve_forward(model)
    backward = solve_backward(model, method="ode")

    np.testing.assert_allclose(backward.between(2, 9), forward.between(2, 9), atol=1e-9)
    assert backward.direction == "backward"


def test_field_rows_are_probability_vectors():
    field = solve_forward(_factor_model())

    assert field.max_row_error() < 1e-10
    assert check_chapman_kolmogorov(field) < 1e-10


def test_off_grid_times_split_cells_exactly():
    model = two_state_model(1.0, 2.0)
    field = solve_forward(model)

    np.testing.assert_allclose(field.at(0.125, 0.61), expm(0.485 * switching(1.0, 2.0)), atol=1e-12)
    with pytest.raises(OffGridTimeError):
        field.matrix(0.0, 0.61)
    with pytest.raises(ValueError):
        field.at(0.5, 0.4)


def test_zero_intensity_gives_identity_everywhere():
    scenario = unit_scenario()
    space = ProductStateSpace((2, 2))
    model = CmcModel.constant(space, scenario, np.zeros((4, 4)))

    field = solve_forward(model)

    np.testing.assert_array_equal(field.from_origin, np.broadcast_to(np.eye(4), field.from_origin.shape))


def test_kronecker_sum_field_is_kronecker_product_of_component_fields():
    scenario = factor_scenario()
    first = GeneratorPath.from_matrices(scenario, [switching(z, 1.0) for z in scenario.values[:-1, 0]])
    second = GeneratorPath.constant(scenario, absorbing(0.7))

    joint = solve_forward(kron_sum_path(first, second))
    fields = solve_forward(first), solve_forward(second)

    for i, j in [(0, 10), (3, 4), (2, 8)]:
        np.testing.assert_allclose(
            joint.between(i, j), kron(fields[0].between(i, j), fields[1].between(i, j)), atol=1e-12
        )


def test_recovered_generator_reproduces_intensity():
    model = _factor_model()

    recovered = recover_generator(solve_forward(model))

    np.testing.assert_allclose(recovered.stacked(), model.generator.stacked(), atol=1e-8)


def test_state_distribution_follows_initial_law():
    model = two_state_model(1.0, 2.0)
    path = state_distribution(model)

    np.testing.assert_allclose(path.probs[0], [1.0, 0.0])
    np.testing.assert_allclose(path.probs.sum(axis=1), 1.0, atol=1e-12)
    np.testing.assert_allclose(distribution_at(model, 1.0), path.at(1.0), atol=1e-12)
    # P(X_t = 1) = a (1 - e^{-(a + b) t}) / (a + b)
    np.testing.assert_allclose(distribution_at(model, 1.0)[1], (1 - np.exp(-3.0)) / 3.0, atol=1e-12)


def test_distribution_frame_labels_states():
    scenario = unit_scenario()
    space = ProductStateSpace((2, 2))
    model = CmcModel.constant(space, scenario, np.zeros((4, 4)))

    frame = state_distribution(model).to_frame(space)

    assert list(frame.columns) == ["t", "(0,0)", "(0,1)", "(1,0)", "(1,1)"]
    assert frame.shape[0] == scenario.grid.size


def test_component_field_of_product_chain_is_component_field():
    scenario = unit_scenario()
    first = GeneratorPath.constant(scenario, absorbing(1.0))
    second = GeneratorPath.constant(scenario, absorbing(2.0))
    space = ProductStateSpace((2, 2))

    component = marginal_transition_field(solve_forward(kron_sum_path(first, second)), space, 0)

    assert component.spread(0.0, 1.0) < 1e-12
    np.testing.assert_allclose(component.matrix(0.0, 1.0), expm(absorbing(1.0)), atol=1e-12)


def test_solve_reports_to_event_tracker():
    handler = BufferEventHandler()
    tracker = EventTracker.initialize_with_handlers([handler])

    solve_forward(two_state_model(), event_tracker=tracker)

    output = handler.buffer.getvalue()
    assert "solve forward" in output
    assert "max row error" in output
