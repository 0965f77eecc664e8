import logging
import os
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Tuple

import numpy as np

from cmcopula.audit import EventTracker, SimulationEvent
from cmcopula.chain import CmcModel
from cmcopula.montecarlo.exceptions import InvalidSeedStreamError
from cmcopula.montecarlo.paths import PathBundle

logger = logging.getLogger(__name__)

BLOCK_SIZE = 4096
THREADS_ENV = "CMC_THREADS"

Events = Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]


def thread_cap() -> int:
    """
    Largest number of worker threads, from CMC_THREADS or the number of CPUs.

    Returns:
        A positive integer.
    """
    value = os.environ.get(THREADS_ENV)
    if value:
        try:
            return max(1, int(value))
        except ValueError:
            logger.warning("Ignoring %s=%r, expected an integer", THREADS_ENV, value)
    return os.cpu_count() or 1


def block_generator(seed: int, block: int) -> np.random.Generator:
    """
    Random stream of one block of paths: Philox keyed on (seed, block).

    Args:
        seed: Master seed.
        block: Block index.

    Returns:
        The generator.
    """
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(block,))))


def _simulate_block(model: CmcModel, seed: int, block: int, size: int) -> Events:
    """
    Draws `size` paths with the block's own stream, cell by cell with competing exponential clocks.
    """
    rng = block_generator(seed, block)
    scenario = model.scenario
    states = rng.choice(model.dimension, size=size, p=model.initial.probs)
    initial = states.copy()

    paths: List[np.ndarray] = []
    times: List[np.ndarray] = []
    targets: List[np.ndarray] = []
    for cell, generator in enumerate(model.generator.cells):
        start, end = float(scenario.grid[cell]), float(scenario.grid[cell + 1])
        exit_rates = generator.exit_rates
        cumulative = np.cumsum(generator.jump_distribution(), axis=1)
        totals = cumulative[:, -1:].copy()
        cumulative = np.divide(cumulative, totals, out=cumulative, where=totals > 0)
        clock = np.full(size, start)
        active = np.flatnonzero(exit_rates[states] > 0)
        while active.size:
            rates = exit_rates[states[active]]
            arrivals = clock[active] + rng.standard_exponential(active.size) / rates
            jumping = arrivals < end
            active, arrivals = active[jumping], arrivals[jumping]
            if not active.size:
                break
            draws = rng.random(active.size)
            rows = cumulative[states[active]]
            new_states = np.minimum((rows < draws[:, None]).sum(axis=1), model.dimension - 1)
            paths.append(active)
            times.append(arrivals)
            targets.append(new_states)
            states[active] = new_states
            clock[active] = arrivals
            active = active[exit_rates[new_states] > 0]

    if not paths:
        empty = np.empty(0, dtype=np.int64)
        return initial, empty, np.empty(0), empty
    return initial, np.concatenate(paths), np.concatenate(times), np.concatenate(targets)


def simulate(
    model: CmcModel,
    n_paths: int,
    seed: int,
    workers: Optional[int] = None,
    event_tracker: Optional[EventTracker] = None,
) -> PathBundle:
    """
    Draws sample paths of the model along its scenario.

    Within a cell the intensity is constant, so holding times are exponential with the exit rate of
    the current state and are cut at the cell boundary; targets follow the normalised off-diagonal row.
    Paths are split into blocks of BLOCK_SIZE, each with its own Philox stream keyed on
    (seed, block), and blocks are merged in order. The result depends only on (model, n_paths, seed).

    Args:
        model: The model.
        n_paths: Number of paths, at least 1.
        seed: Master seed, a non-negative integer.
        workers: Worker threads; capped by CMC_THREADS or the CPU count by default.
        event_tracker: Tracker notified about the simulation.

    Returns:
        The path bundle.

    Raises:
        InvalidSeedStreamError: If the seed is not a non-negative integer.
        ValueError: If n_paths < 1.
    """
    if isinstance(seed, bool) or not isinstance(seed, (int, np.integer)) or seed < 0:
        raise InvalidSeedStreamError(seed)
    if n_paths < 1:
        raise ValueError(f"n_paths must be at least 1, got {n_paths}.")

    sizes = [min(BLOCK_SIZE, n_paths - start) for start in range(0, n_paths, BLOCK_SIZE)]
    workers = max(1, min(workers or thread_cap(), len(sizes)))
    tracker = EventTracker.resolve(event_tracker)
    event = SimulationEvent(n_paths=n_paths, seed=int(seed), blocks=len(sizes), workers=workers)

    with tracker.track_event(event) as span:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            blocks = list(
                executor.map(
                    lambda job: _simulate_block(model, int(seed), job[0], job[1]),
                    enumerate(sizes),
                )
            )

        initial_states = np.concatenate([block[0] for block in blocks])
        shifts = np.cumsum([0] + sizes[:-1])
        event_paths = np.concatenate([block[1] + shift for block, shift in zip(blocks, shifts)])
        event_times = np.concatenate([block[2] for block in blocks])
        event_states = np.concatenate([block[3] for block in blocks])
        order = np.lexsort((event_times, event_paths))
        offsets = np.concatenate([[0], np.cumsum(np.bincount(event_paths, minlength=n_paths))])

        bundle = PathBundle(
            space=model.space,
            scenario=model.scenario,
            seed=int(seed),
            initial_states=initial_states,
            offsets=offsets,
            event_times=event_times[order],
            event_states=event_states[order],
        )
        logger.debug(
            "Simulated %d paths in %d blocks on %d threads, %d jumps", n_paths, len(sizes), workers, bundle.n_jumps
        )
        event.jumps = bundle.n_jumps
        span(event)

    return bundle
