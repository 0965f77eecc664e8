import logging
from itertools import combinations
from typing import Iterable, Literal, Optional, Tuple, Union

import numpy as np
from scipy.integrate import solve_ivp
from scipy.linalg import expm, logm

from cmcopula.audit import EventTracker, SolveEvent
from cmcopula.chain import CmcModel, GeneratorMatrix, GeneratorPath, validate_generator
from cmcopula.kolmogorov.exceptions import NonFiniteEntriesError, StochasticityError
from cmcopula.kolmogorov.field import ROW_TOL, StateDistributionPath, TransitionField

logger = logging.getLogger(__name__)

Method = Literal["expm", "ode"]
Direction = Literal["forward", "backward"]

ODE_RTOL = 1e-12
ODE_ATOL = 1e-14
RECOVERY_TOL = 1e-8


def _generator_of(source: Union[CmcModel, GeneratorPath]) -> GeneratorPath:
    return source.generator if isinstance(source, CmcModel) else source


def _ode_propagator(generator: GeneratorMatrix, length: float, direction: Direction) -> np.ndarray:
    entries = generator.entries
    d = generator.dimension

    if direction == "forward":
        # dP(v, u)/du = P(v, u) Lambda, P(v, v) = I
        def rhs(_: float, flat: np.ndarray) -> np.ndarray:
            return (flat.reshape(d, d) @ entries).ravel()

    else:
        # dP(v, t)/dv = -Lambda P(v, t), P(t, t) = I, integrated in reversed time w = t - v
        def rhs(_: float, flat: np.ndarray) -> np.ndarray:
            return (entries @ flat.reshape(d, d)).ravel()

    solution = solve_ivp(
        rhs, (0.0, length), np.eye(d).ravel(), method="DOP853", rtol=ODE_RTOL, atol=ODE_ATOL, t_eval=[length]
    )
    return solution.y[:, -1].reshape(d, d)


def propagate_cell(
    generator: GeneratorMatrix, length: float, method: Method = "expm", direction: Direction = "forward"
) -> np.ndarray:
    """
    Transition matrix across one cell of constant intensity.

    Args:
        generator: Intensity in force on the cell.
        length: Cell length.
        method: `expm` uses the matrix exponential, `ode` integrates the Kolmogorov equation numerically.
        direction: Kolmogorov equation integrated by the `ode` method.

    Returns:
        exp(length * generator).

    Raises:
        ValueError: If the method is unknown.
    """
    if method == "expm":
        return expm(length * generator.entries)
    if method == "ode":
        return _ode_propagator(generator, length, direction)
    raise ValueError(f"Unknown method {method!r}; use 'expm' or 'ode'.")


def _solve(
    source: Union[CmcModel, GeneratorPath],
    direction: Direction,
    method: Method,
    event_tracker: Optional[EventTracker],
) -> TransitionField:
    path = _generator_of(source)
    tracker = EventTracker.resolve(event_tracker)
    event = SolveEvent(direction=direction, method=method, dimension=path.dimension, cells=path.n_cells)

    with tracker.track_event(event) as span:
        lengths = path.scenario.cell_lengths
        propagators = np.empty((path.n_cells, path.dimension, path.dimension))
        for cell, (generator, length) in enumerate(zip(path.cells, lengths)):
            propagator = propagate_cell(generator, float(length), method, direction)
            if not np.all(np.isfinite(propagator)):
                raise NonFiniteEntriesError(cell)
            residual = max(
                float(np.abs(propagator.sum(axis=1) - 1.0).max()), float(np.clip(-propagator, 0, None).max())
            )
            if residual > ROW_TOL:
                raise StochasticityError(cell, residual)
            propagators[cell] = np.clip(propagator, 0.0, None)

        field = TransitionField(path, propagators, direction=direction, method=method)
        logger.debug("Solved %s equation with %s over %d cells (d=%d)", direction, method, path.n_cells, path.dimension)
        event.max_row_error = field.max_row_error()
        span(event)

    return field


def solve_forward(
    source: Union[CmcModel, GeneratorPath], method: Method = "expm", event_tracker: Optional[EventTracker] = None
) -> TransitionField:
    """
    Solves the Kolmogorov forward equation P(v, t) - I = int_v^t P(v, u) Lambda_u du along the scenario.

    Args:
        source: Model (or bare generator path) to solve for.
        method: `expm` for exact cell exponentials, `ode` for numerical integration of the equation.
        event_tracker: Tracker notified about the solve; the global handlers are used by default.

    Returns:
        The transition field.
    """
    return _solve(source, "forward", method, event_tracker)


def solve_backward(
    source: Union[CmcModel, GeneratorPath], method: Method = "expm", event_tracker: Optional[EventTracker] = None
) -> TransitionField:
    """
    Solves the Kolmogorov backward equation P(v, t) - I = int_v^t Lambda_u P(u, t) du along the scenario.

    Args:
        source: Model (or bare generator path) to solve for.
        method: `expm` for exact cell exponentials, `ode` for numerical integration of the equation.
        event_tracker: Tracker notified about the solve; the global handlers are used by default.

    Returns:
        The transition field.
    """
    return _solve(source, "backward", method, event_tracker)


def state_distribution(model: CmcModel, field: Optional[TransitionField] = None) -> StateDistributionPath:
    """
    Law of X_t at every grid point, pi_t = initial^T P(0, t).

    Args:
        model: The model.
        field: Previously solved field of the model; solved forward when omitted.

    Returns:
        The state distribution path.
    """
    field = field or solve_forward(model)
    probs = np.einsum("i,jik->jk", model.initial.probs, field.from_origin)
    return StateDistributionPath(field, probs)


def distribution_at(model: CmcModel, t: float, field: Optional[TransitionField] = None) -> np.ndarray:
    """
    Law of X_t at an arbitrary time.

    Args:
        model: The model.
        t: Time in [0, T].
        field: Previously solved field of the model.

    Returns:
        Probability vector of length d.
    """
    field = field or solve_forward(model)
    return np.clip(model.initial.probs @ field.at(0.0, t), 0.0, None)


def check_chapman_kolmogorov(
    field: TransitionField, triples: Optional[Iterable[Tuple[int, int, int]]] = None
) -> float:
    """
    Largest Chapman-Kolmogorov residual ||P(s, u) - P(s, t) P(t, u)||_inf.

    Args:
        field: The transition field.
        triples: Grid index triples (i, j, k) with i <= j <= k; all triples by default.

    Returns:
        The maximal residual.
    """
    if triples is None:
        triples = combinations(range(field.grid.size), 3)
    residual = 0.0
    for i, j, k in triples:
        difference = field.between(i, k) - field.between(i, j) @ field.between(j, k)
        residual = max(residual, float(np.abs(difference).sum(axis=1).max()))
    return residual


def recover_generator(field: TransitionField, tol: float = RECOVERY_TOL) -> GeneratorPath:
    """
    Recovers the cell generators from the cell propagators through the principal matrix logarithm.

    Args:
        field: The transition field.
        tol: Tolerance for certifying the recovered matrices.

    Returns:
        Generator path on the field's scenario.
    """
    cells = []
    for propagator, length in zip(field.propagators, field.scenario.cell_lengths):
        logarithm = np.real(logm(propagator)) / length
        cells.append(validate_generator(logarithm, tol))
    return GeneratorPath(field.scenario, tuple(cells))
