# pylint: disable=missing-docstring, missing-return-doc, missing-param-doc, disallowed-name, missing-return-type-doc

import numpy as np
import pytest

from cmcopula.chain import FactorScenario, ProductStateSpace
from cmcopula.montecarlo import PathBundle


@pytest.fixture(name="bundle")
def bundle_fixture() -> PathBundle:
    return PathBundle(
        space=ProductStateSpace.single(2),
        scenario=FactorScenario.uniform(1.0, 0.25),
        seed=0,
        initial_states=np.array([0, 1]),
        offsets=np.array([0, 2, 2]),
        event_times=np.array([0.3, 0.6]),
        event_states=np.array([1, 0]),
    )


def test_states_are_right_continuous(bundle):
    np.testing.assert_array_equal(bundle.states_at(0.0), [0, 1])
    np.testing.assert_array_equal(bundle.states_at(0.3), [1, 1])
    np.testing.assert_array_equal(bundle.states_at(0.59), [1, 1])
    np.testing.assert_array_equal(bundle.states_at(1.0), [0, 1])


def test_component_states_follow_kronecker_order():
    pair = PathBundle(
        space=ProductStateSpace((2, 2)),
        scenario=FactorScenario.uniform(1.0, 0.25),
        seed=0,
        initial_states=np.array([0, 2]),
        offsets=np.array([0, 1, 1]),
        event_times=np.array([0.5]),
        event_states=np.array([3]),
    )

    np.testing.assert_array_equal(pair.component_states_at(0, 0.0), [0, 1])
    np.testing.assert_array_equal(pair.component_states_at(1, 0.0), [0, 0])
    np.testing.assert_array_equal(pair.component_states_at(0, 1.0), [1, 1])
    np.testing.assert_array_equal(pair.component_states_at(1, 1.0), [1, 0])


@pytest.mark.parametrize("horizon", [1.0, 1e6])
def test_states_at_matches_path_by_path_lookup(horizon):
    rng = np.random.default_rng(11)
    n_paths = 3000
    counts = rng.integers(0, 4, size=n_paths)
    offsets = np.concatenate([[0], np.cumsum(counts)])
    times = np.concatenate([np.sort(rng.choice([0.25, 0.5, 0.75], size=n, replace=False)) for n in counts])
    states = rng.integers(0, 4, size=times.size)
    pair = PathBundle(
        space=ProductStateSpace((2, 2)),
        scenario=FactorScenario.from_times(np.array([0.0, 0.25, 0.5, 0.75, 1.0]) * horizon),
        seed=0,
        initial_states=rng.integers(0, 4, size=n_paths),
        offsets=offsets,
        event_times=times * horizon,
        event_states=states,
    )

    for t in np.array([0.0, 0.25, 0.3, 0.5, 0.75, 1.0]) * horizon:
        expected = []
        for p in range(n_paths):
            window = slice(offsets[p], offsets[p + 1])
            reached = pair.event_states[window][pair.event_times[window] <= t]
            expected.append(reached[-1] if reached.size else pair.initial_states[p])
        np.testing.assert_array_equal(pair.states_at(t), expected)


def test_occupation_times(bundle):
    np.testing.assert_allclose(bundle.occupation(0), [0.7, 0.0])
    np.testing.assert_allclose(bundle.occupation(1, 0.5, 1.0), [0.1, 0.5])
    np.testing.assert_allclose(bundle.occupation(0) + bundle.occupation(1), 1.0)


def test_discounted_occupation(bundle):
    np.testing.assert_allclose(bundle.discounted_occupation(0, 1, 0.5), [0.1, 0.5])
    discounted = bundle.discounted_occupation(0, 1, 0.5, rate=1.0)
    assert discounted[1] == pytest.approx(1.0 - np.exp(-0.5))
    assert discounted[0] == pytest.approx(1.0 - np.exp(-0.1))


def test_jump_counts(bundle):
    np.testing.assert_array_equal(bundle.event_sources, [0, 1])
    np.testing.assert_array_equal(bundle.jump_counts(0, 1), [1, 0])
    np.testing.assert_array_equal(bundle.jump_counts(1, 0, 0.0, 0.5), [0, 0])
    np.testing.assert_array_equal(bundle.transition_counts(), [[0, 1], [1, 0]])


def test_frame_lists_initial_states_and_jumps(bundle):
    frame = bundle.to_frame()

    assert list(frame.columns) == ["path_id", "time", "state"]
    assert frame["path_id"].tolist() == [0, 0, 0, 1]
    assert frame["state"].tolist() == ["(0)", "(1)", "(0)", "(1)"]
    assert bundle.to_frame(labelled=False)["state"].tolist() == [0, 1, 0, 1]


def test_csv_export(bundle, tmp_path):
    target = tmp_path / "paths.csv"

    bundle.to_csv(target)

    assert target.read_text().splitlines()[:2] == ["path_id,time,state", "0,0,(0)"]


def test_offsets_must_match_events():
    with pytest.raises(ValueError):
        PathBundle(
            space=ProductStateSpace.single(2),
            scenario=FactorScenario.uniform(1.0, 0.25),
            seed=0,
            initial_states=np.array([0]),
            offsets=np.array([0, 1]),
            event_times=np.array([]),
            event_states=np.array([]),
        )
