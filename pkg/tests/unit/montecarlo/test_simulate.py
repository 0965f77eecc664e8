# pylint: disable=missing-docstring, missing-return-doc, missing-param-doc, disallowed-name, missing-return-type-doc

import numpy as np
import pytest

from cmcopula.audit import BufferEventHandler, EventTracker
from cmcopula.chain import CmcModel, ProductStateSpace
from cmcopula.copulae import build_common_jump
from cmcopula.montecarlo import BLOCK_SIZE, InvalidSeedStreamError, block_generator, simulate, thread_cap
from tests.unit.fixtures import two_state_model, unit_scenario


def test_same_seed_gives_identical_paths():
    model = two_state_model(1.0, 2.0)

    first = simulate(model, 500, seed=11)
    second = simulate(model, 500, seed=11)

    np.testing.assert_array_equal(first.event_times, second.event_times)
    np.testing.assert_array_equal(first.event_states, second.event_states)
    other = simulate(model, 500, seed=12)
    assert other.n_jumps != first.n_jumps or not np.array_equal(other.event_times, first.event_times)


def test_paths_do_not_depend_on_worker_count():
    model = two_state_model(1.0, 2.0)
    n_paths = 2 * BLOCK_SIZE + 17

    serial = simulate(model, n_paths, seed=3, workers=1)
    parallel = simulate(model, n_paths, seed=3, workers=3)

    assert serial.n_paths == n_paths
    np.testing.assert_array_equal(serial.offsets, parallel.offsets)
    np.testing.assert_array_equal(serial.event_times, parallel.event_times)


def test_block_streams_are_distinct():
    assert block_generator(5, 0).random() != block_generator(5, 1).random()
    assert block_generator(5, 1).random() == block_generator(5, 1).random()


def test_events_stay_inside_horizon_and_are_increasing():
    bundle = simulate(two_state_model(3.0, 3.0), 300, seed=1)

    assert bundle.event_times.min() > 0.0
    assert bundle.event_times.max() <= bundle.horizon
    for p in range(bundle.n_paths):
        times = bundle.event_times[bundle.offsets[p] : bundle.offsets[p + 1]]
        assert np.all(np.diff(times) > 0)


def test_absorbing_states_are_never_left():
    bundle = simulate(build_common_jump(unit_scenario(), 1.0, 2.0, 0.5).model, 2000, seed=8)

    assert np.all(bundle.event_sources != 3)
    counts = bundle.transition_counts()
    assert counts[1, 2] == counts[2, 1] == 0


def test_zero_intensity_never_jumps():
    model = CmcModel.constant(ProductStateSpace((2, 2)), unit_scenario(), np.zeros((4, 4)))

    bundle = simulate(model, 100, seed=0)

    assert bundle.n_jumps == 0
    np.testing.assert_array_equal(bundle.states_at(1.0), 0)


@pytest.mark.parametrize("seed", [-1, 1.5, True])
def test_invalid_seed_is_rejected(seed):
    with pytest.raises(InvalidSeedStreamError):
        simulate(two_state_model(), 10, seed=seed)


def test_path_count_must_be_positive():
    with pytest.raises(ValueError):
        simulate(two_state_model(), 0, seed=1)


def test_thread_cap_reads_environment(monkeypatch):
    monkeypatch.setenv("CMC_THREADS", "3")
    assert thread_cap() == 3

    monkeypatch.setenv("CMC_THREADS", "many")
    assert thread_cap() >= 1


def test_simulation_reports_jumps():
    handler = BufferEventHandler()

    simulate(two_state_model(), 50, seed=2, event_tracker=EventTracker.initialize_with_handlers([handler]))

    output = handler.buffer.getvalue()
    assert "simulate paths=50 seed=2" in output
    assert "jumps" in output
