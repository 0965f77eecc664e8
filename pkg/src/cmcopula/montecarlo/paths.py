from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Tuple

import numpy as np
import pandas as pd

from cmcopula._types import PathLike
from cmcopula.chain import FactorScenario, ProductStateSpace


def _frozen(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class PathBundle:
    """
    Simulated paths of one model along one scenario, stored as flat event arrays.

    The events of path p occupy `event_times[offsets[p]:offsets[p + 1]]` (strictly increasing) and
    `event_states[...]` holds the flat state entered at each event. Between events a path stays put;
    before its first event it is in `initial_states[p]`.
    """

    space: ProductStateSpace
    scenario: FactorScenario
    seed: int
    initial_states: np.ndarray
    offsets: np.ndarray
    event_times: np.ndarray
    event_states: np.ndarray

    def __post_init__(self) -> None:
        for name in ("initial_states", "offsets", "event_states"):
            object.__setattr__(self, name, _frozen(np.asarray(getattr(self, name), dtype=np.int64)))
        object.__setattr__(self, "event_times", _frozen(np.asarray(self.event_times, dtype=float)))
        if self.offsets.size != self.initial_states.size + 1 or self.offsets[-1] != self.event_times.size:
            raise ValueError("Event offsets do not match the number of paths and events.")

    @property
    def n_paths(self) -> int:
        """
        Number of simulated paths.
        """
        return int(self.initial_states.size)

    @property
    def n_jumps(self) -> int:
        """
        Total number of jumps over all paths.
        """
        return int(self.event_times.size)

    @property
    def horizon(self) -> float:
        """
        Final time T.
        """
        return self.scenario.horizon

    @cached_property
    def event_paths(self) -> np.ndarray:
        """
        Path index of every event.
        """
        return _frozen(np.repeat(np.arange(self.n_paths), np.diff(self.offsets)))

    @cached_property
    def event_sources(self) -> np.ndarray:
        """
        State left at every event.
        """
        sources = np.empty(self.n_jumps, dtype=np.int64)
        if self.n_jumps:
            sources[1:] = self.event_states[:-1]
            firsts = self.offsets[:-1][np.diff(self.offsets) > 0]
            sources[firsts] = self.initial_states[self.event_paths[firsts]]
        return _frozen(sources)

    @cached_property
    def _segments(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """
        Sojourns of all paths as (path, start, end, state) arrays.
        """
        paths = np.concatenate([np.arange(self.n_paths), self.event_paths])
        starts = np.concatenate([np.zeros(self.n_paths), self.event_times])
        states = np.concatenate([self.initial_states, self.event_states])
        order = np.lexsort((starts, paths))
        paths, starts, states = paths[order], starts[order], states[order]
        ends = np.empty_like(starts)
        ends[:-1] = starts[1:]
        last = np.ones(paths.size, dtype=bool)
        last[:-1] = paths[1:] != paths[:-1]
        ends[last] = self.horizon
        return paths, starts, ends, states

    def states_at(self, t: float) -> np.ndarray:
        """
        Flat state of every path at time t (right-continuous).

        Args:
            t: Time in [0, T].

        Returns:
            Integer array of length n_paths.
        """
        self.scenario.check_time(t)
        # events are sorted by (path, time), so the ones at or before t open every path's slice
        passed = np.bincount(self.event_paths[self.event_times <= t], minlength=self.n_paths)
        states = np.array(self.initial_states)
        jumped = passed > 0
        states[jumped] = self.event_states[(self.offsets[:-1] + passed - 1)[jumped]]
        return states

    def component_states_at(self, k: int, t: float) -> np.ndarray:
        """
        State of component k of every path at time t.

        Args:
            k: Component index.
            t: Time in [0, T].

        Returns:
            Integer array of length n_paths.
        """
        return self.space.coordinates[self.states_at(t), k]

    def occupation(self, x: int, s: float = 0.0, t: Optional[float] = None) -> np.ndarray:
        """
        Time every path spends in flat state x during [s, t].

        Args:
            x: Flat state.
            s: Start of the window.
            t: End of the window; the horizon by default.

        Returns:
            Array of length n_paths; summed over x it equals t - s for every path.
        """
        t = self.horizon if t is None else t
        paths, starts, ends, states = self._segments
        overlap = np.clip(np.minimum(ends, t) - np.maximum(starts, s), 0.0, None)
        return np.bincount(paths, weights=np.where(states == x, overlap, 0.0), minlength=self.n_paths)

    def discounted_occupation(self, k: int, value: int, s: float, rate: float = 0.0) -> np.ndarray:
        """
        Discounted time component k spends in `value` after s: int_s^T e^{-rate (u - s)} 1{X^k_u = value} du.

        Args:
            k: Component index.
            value: Component state.
            s: Start time, the discounting origin.
            rate: Continuously compounded discount rate, nonnegative.

        Returns:
            Array of length n_paths.
        """
        paths, starts, ends, states = self._segments
        lower = np.maximum(starts, s)
        upper = np.maximum(ends, lower)
        inside = self.space.coordinates[states, k] == value
        if rate > 0:
            weights = np.exp(-rate * (lower - s)) - np.exp(-rate * (upper - s))
            weights /= rate
        else:
            weights = upper - lower
        return np.bincount(paths, weights=np.where(inside, weights, 0.0), minlength=self.n_paths)

    def jump_counts(self, x: int, y: int, s: float = 0.0, t: Optional[float] = None) -> np.ndarray:
        """
        Number of jumps from x to y in (s, t] of every path.

        Args:
            x: Flat state left.
            y: Flat state entered.
            s: Start of the window.
            t: End of the window; the horizon by default.

        Returns:
            Integer array of length n_paths.
        """
        t = self.horizon if t is None else t
        mask = (self.event_sources == x) & (self.event_states == y) & (self.event_times > s) & (self.event_times <= t)
        return np.bincount(self.event_paths[mask], minlength=self.n_paths)

    def transition_counts(self, s: float = 0.0, t: Optional[float] = None) -> np.ndarray:
        """
        Number of jumps from x to y in (s, t] over all paths.

        Args:
            s: Start of the window.
            t: End of the window; the horizon by default.

        Returns:
            d x d integer matrix with a zero diagonal.
        """
        t = self.horizon if t is None else t
        mask = (self.event_times > s) & (self.event_times <= t)
        counts = np.zeros((self.space.size, self.space.size), dtype=np.int64)
        np.add.at(counts, (self.event_sources[mask], self.event_states[mask]), 1)
        return counts

    def to_frame(self, labelled: bool = True) -> pd.DataFrame:
        """
        Long table of path histories: one row for the initial state and one per jump.

        Args:
            labelled: Write states as multi-indices like "(0,1)" instead of flat indices.

        Returns:
            Data frame with columns path_id, time, state.
        """
        paths, starts, _, states = self._segments
        column = states
        if labelled:
            labels = np.array(["(" + ",".join(str(c) for c in state) + ")" for state in self.space.states()])
            column = labels[states]
        return pd.DataFrame({"path_id": paths, "time": starts, "state": column})

    def to_csv(self, path: PathLike, labelled: bool = True) -> None:
        """
        Writes `to_frame` as CSV.

        Args:
            path: Target file.
            labelled: Write states as multi-indices.
        """
        self.to_frame(labelled).to_csv(path, index=False, float_format="%.12g")
