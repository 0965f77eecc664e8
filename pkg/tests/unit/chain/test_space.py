# pylint: disable=missing-docstring, missing-return-doc, missing-param-doc, disallowed-name, missing-return-type-doc

import numpy as np
import pytest

from cmcopula.chain import DimensionMismatchError, InitialLaw, InitialLawError, ProductStateSpace, StateOutOfRangeError


def test_flat_index_follows_kronecker_order():
    space = ProductStateSpace((2, 2))

    assert [space.flat_index(state) for state in [(0, 0), (0, 1), (1, 0), (1, 1)]] == [0, 1, 2, 3]
    assert space.states() == [(0, 0), (0, 1), (1, 0), (1, 1)]


@pytest.mark.parametrize("components", [(1,), (3,), (2, 2), (2, 3, 4), (4, 1, 2, 3)])
def test_multi_index_inverts_flat_index(components):
    space = ProductStateSpace(components)

    for index in range(space.size):
        assert space.flat_index(space.multi_index(index)) == index


def test_flat_index_rejects_bad_states():
    space = ProductStateSpace((2, 3))

    with pytest.raises(StateOutOfRangeError):
        space.flat_index((0, 3))
    with pytest.raises(DimensionMismatchError):
        space.flat_index((0,))
    with pytest.raises(StateOutOfRangeError):
        space.multi_index(6)


def test_empty_space_is_rejected():
    with pytest.raises(ValueError):
        ProductStateSpace(())


def test_component_indicator_aggregates_rows():
    space = ProductStateSpace((2, 3))
    indicator = space.component_indicator(1)

    assert indicator.shape == (6, 3)
    np.testing.assert_array_equal(indicator.sum(axis=1), np.ones(6))
    np.testing.assert_array_equal(indicator[space.flat_index((1, 2))], [0, 0, 1])


def test_marginalize_sums_over_other_components():
    space = ProductStateSpace((2, 2))
    probs = np.array([0.1, 0.2, 0.3, 0.4])

    np.testing.assert_allclose(space.marginalize(probs, 0), [0.3, 0.7])
    np.testing.assert_allclose(space.marginalize(probs, 1), [0.4, 0.6])


def test_product_initial_law_has_given_margins():
    space = ProductStateSpace((2, 2))
    law = InitialLaw.product([[0.25, 0.75], [0.5, 0.5]])

    np.testing.assert_allclose(law.marginal(space, 0), [0.25, 0.75])
    np.testing.assert_allclose(law.marginal(space, 1), [0.5, 0.5])


@pytest.mark.parametrize("probs", [[0.5, 0.4], [1.2, -0.2], []])
def test_invalid_initial_law_is_rejected(probs):
    with pytest.raises(InitialLawError):
        InitialLaw(np.array(probs))


def test_tiny_negative_initial_entries_are_clipped():
    law = InitialLaw(np.array([1.0 + 1e-13, -1e-13]))

    assert law.probs.min() == 0.0
