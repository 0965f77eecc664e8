import logging
from typing import List, Optional, Tuple

import numpy as np
from numpy.typing import ArrayLike

from cmcopula.chain import (
    CmcModel,
    DimensionMismatchError,
    FactorScenario,
    GeneratorPath,
    InitialLaw,
    ProductStateSpace,
    RatePath,
    complete_diagonal,
    kron_sum_path,
)
from cmcopula.chain.generator import STRUCTURAL_TOL
from cmcopula.chain.rates import RateLike, as_rate_path
from cmcopula.copulae.candidate import CopulaCandidate, CopulaKind, InitialProvenance
from cmcopula.copulae.exceptions import (
    ConstraintViolatedError,
    HeterogeneousMarginalsError,
    InitialCouplingError,
    NonPositiveRateError,
)
from cmcopula.copulae.spec import MarginalSpec, MarginalTarget
from cmcopula.kolmogorov import NegativeRateError, weak_only_marginal_rates

logger = logging.getLogger(__name__)

COUPLING_TOL = 1e-12

InitialLike = Optional[ArrayLike]


def _coupled_initial(spec: MarginalSpec, initial: InitialLike) -> Tuple[InitialLaw, InitialProvenance]:
    """
    Joint initial law of a candidate: the product of the target initial laws, or a supplied law whose
    margins are the target initial laws.
    """
    if initial is None:
        return spec.product_initial(), InitialProvenance.PRODUCT
    law = initial if isinstance(initial, InitialLaw) else InitialLaw(np.asarray(initial, dtype=float))
    space = spec.space
    law.check_space(space)
    for k, target in enumerate(spec.targets):
        deviation = float(np.max(np.abs(law.marginal(space, k) - target.initial)))
        if deviation > COUPLING_TOL:
            raise InitialCouplingError(k, deviation)
    return law, InitialProvenance.SUPPLIED


def _rate_paths(scenario: FactorScenario, *rates: RateLike) -> List[RatePath]:
    return [as_rate_path(rate, scenario) for rate in rates]


def _absorbing_spec_with_initial(
    scenario: FactorScenario, rates: List[RatePath], initial: InitialLike
) -> Tuple[MarginalSpec, InitialLaw, InitialProvenance]:
    """
    Absorbing two-state targets. A supplied joint initial law sets the target initial laws to its margins.
    """
    spec = MarginalSpec.absorbing(scenario, rates)
    if initial is None:
        return spec, spec.product_initial(), InitialProvenance.PRODUCT
    law = initial if isinstance(initial, InitialLaw) else InitialLaw(np.asarray(initial, dtype=float))
    law.check_space(spec.space)
    spec = MarginalSpec(
        tuple(
            MarginalTarget.absorbing(scenario, rate, law.marginal(spec.space, k)) for k, rate in enumerate(rates)
        )
    )
    return spec, law, InitialProvenance.SUPPLIED


def build_conditional_independence(
    spec: MarginalSpec, initial: InitialLike = None, tol: float = STRUCTURAL_TOL
) -> CopulaCandidate:
    """
    Copula in which the components move independently given the scenario and never jump together.

    The joint intensity is the Kronecker sum of the target intensities on every cell.

    Args:
        spec: Target marginal laws.
        initial: Joint initial law; the product of the target initial laws by default.
        tol: Validation tolerance for the joint generator.

    Returns:
        The candidate.

    Raises:
        InitialCouplingError: If a supplied initial law has the wrong margins.
    """
    generator = kron_sum_path(*(target.intensity for target in spec.targets), tol=tol)
    law, provenance = _coupled_initial(spec, initial)
    model = CmcModel(spec.space, generator, law)
    return CopulaCandidate(model, CopulaKind.CONDITIONAL_INDEPENDENCE, provenance, spec)


def build_common_jump(
    scenario: FactorScenario,
    a: RateLike,
    b: RateLike,
    c: RateLike,
    initial: InitialLike = None,
    tol: float = STRUCTURAL_TOL,
) -> CopulaCandidate:
    """
    Two absorbing components that may default together.

    From (0,0) component 1 jumps alone at a - c, component 2 alone at b - c and both at c, so each
    component still leaves 0 at its own target rate whatever the other one does.

    Args:
        scenario: The factor scenario.
        a: Target rate of component 1.
        b: Target rate of component 2.
        c: Rate of the common jump, 0 <= c <= min(a, b) on every cell.
        initial: Joint initial law; the chain starts in (0,0) by default.
        tol: Slack allowed on the constraint.

    Returns:
        The candidate.

    Raises:
        ConstraintViolatedError: If c leaves [0, min(a, b)] on some cell.
    """
    rate_a, rate_b, rate_c = _rate_paths(scenario, a, b, c)
    bound = np.minimum(rate_a.values, rate_b.values)
    bad = np.flatnonzero((rate_c.values < -tol) | (rate_c.values > bound + tol))
    if bad.size:
        cell = int(bad[0])
        raise ConstraintViolatedError(cell, float(rate_c.values[cell]), float(bound[cell]))

    matrices = []
    for a_i, b_i, c_i in zip(rate_a.values, rate_b.values, np.clip(rate_c.values, 0.0, bound)):
        matrices.append(
            [
                [-(a_i + b_i - c_i), b_i - c_i, a_i - c_i, c_i],
                [0.0, -a_i, 0.0, a_i],
                [0.0, 0.0, -b_i, b_i],
                [0.0, 0.0, 0.0, 0.0],
            ]
        )
    spec, law, provenance = _absorbing_spec_with_initial(scenario, [rate_a, rate_b], initial)
    model = CmcModel(spec.space, GeneratorPath.from_matrices(scenario, matrices, tol), law)
    return CopulaCandidate(
        model, CopulaKind.COMMON_JUMP, provenance, spec, {"a": rate_a, "b": rate_b, "c": rate_c}
    )


def _diagonal_states(space: ProductStateSpace) -> np.ndarray:
    size = space.components[0]
    return np.array([space.flat_index((x,) * space.n_components) for x in range(size)])


def build_perfect_dependence(spec: MarginalSpec, tol: float = STRUCTURAL_TOL) -> CopulaCandidate:
    """
    Copula in which every component is the same chain.

    From a diagonal state (x, ..., x) the chain jumps to (y, ..., y) at the target rate psi^{xy} and
    nowhere else. States off the diagonal are never reached from the diagonal initial law; there the
    components move independently, which keeps every aggregated row equal to the target.

    Args:
        spec: Target marginal laws, all identical.
        tol: Validation tolerance.

    Returns:
        The candidate.

    Raises:
        HeterogeneousMarginalsError: If the targets differ.
    """
    first = spec.targets[0]
    for k, target in enumerate(spec.targets[1:], start=1):
        same = (
            target.size == first.size
            and np.allclose(target.intensity.stacked(), first.intensity.stacked(), rtol=0.0, atol=tol)
            and np.allclose(target.initial, first.initial, rtol=0.0, atol=tol)
        )
        if not same:
            raise HeterogeneousMarginalsError(k)

    space = spec.space
    diagonal = _diagonal_states(space)
    independent = kron_sum_path(*(target.intensity for target in spec.targets), tol=tol)
    matrices = []
    for cell, psi in enumerate(first.intensity.cells):
        entries = np.array(independent.cells[cell].entries)
        entries[diagonal] = 0.0
        entries[np.ix_(diagonal, diagonal)] = psi.entries
        np.fill_diagonal(entries, 0.0)
        matrices.append(complete_diagonal(entries))

    probs = np.zeros(space.size)
    probs[diagonal] = first.initial
    model = CmcModel(space, GeneratorPath.from_matrices(spec.scenario, matrices, tol * space.size), InitialLaw(probs))
    return CopulaCandidate(model, CopulaKind.PERFECT_DEPENDENCE, InitialProvenance.SUPPLIED, spec)


def build_weak_only(
    scenario: FactorScenario,
    a: RateLike,
    b: RateLike,
    c: RateLike,
    tol: float = STRUCTURAL_TOL,
) -> CopulaCandidate:
    """
    Two absorbing components that are weakly but not strongly Markov consistent (unless c is zero).

    From (0,0) component 1 jumps alone at a, component 2 alone at b and both at c; once one component
    has jumped the other keeps its own rate. Each component is Markov in its own filtration with the
    implied intensities
    psi^1 = a + c delta / (delta + alpha) and psi^2 = b + c delta / (delta + beta),
    evaluated at every cell midpoint from the closed-form transition field started in (0,0).

    Args:
        scenario: The factor scenario.
        a: Rate of component 1 jumping alone, positive.
        b: Rate of component 2 jumping alone, positive.
        c: Rate of the joint jump, nonnegative.
        tol: Validation tolerance.

    Returns:
        The candidate, with the implied marginal targets as its spec.

    Raises:
        NonPositiveRateError: If a or b is not positive on some cell.
        NegativeRateError: If c is negative on some cell.
    """
    rate_a, rate_b, rate_c = _rate_paths(scenario, a, b, c)
    for name, rate in (("a", rate_a), ("b", rate_b)):
        bad = np.flatnonzero(rate.values <= 0)
        if bad.size:
            raise NonPositiveRateError(name, int(bad[0]), float(rate.values[bad[0]]))
    negative = np.flatnonzero(rate_c.values < 0)
    if negative.size:
        raise NegativeRateError("c", int(negative[0]), float(rate_c.values[negative[0]]))

    matrices = []
    for a_i, b_i, c_i in zip(rate_a.values, rate_b.values, rate_c.values):
        matrices.append(
            [
                [-(a_i + b_i + c_i), b_i, a_i, c_i],
                [0.0, -a_i, 0.0, a_i],
                [0.0, 0.0, -b_i, b_i],
                [0.0, 0.0, 0.0, 0.0],
            ]
        )

    implied = np.array(
        [weak_only_marginal_rates(rate_a, rate_b, rate_c, float(t), scenario) for t in scenario.midpoints]
    )
    spec = MarginalSpec.absorbing(scenario, [implied[:, 0], implied[:, 1]])
    logger.debug("Implied weak-only marginal rates span [%.6g, %.6g]", implied.min(), implied.max())
    model = CmcModel(spec.space, GeneratorPath.from_matrices(scenario, matrices, tol), spec.product_initial())
    return CopulaCandidate(
        model, CopulaKind.WEAK_ONLY, InitialProvenance.PRODUCT, spec, {"a": rate_a, "b": rate_b, "c": rate_c}
    )


def _switching_spec(scenario: FactorScenario, rate_a: RatePath, rate_b: RatePath) -> MarginalSpec:
    matrices = [[[-a_i, a_i], [b_i, -b_i]] for a_i, b_i in zip(rate_a.values, rate_b.values)]
    target = MarginalTarget(GeneratorPath.from_matrices(scenario, matrices), np.array([1.0, 0.0]))
    return MarginalSpec.replicate(target, 2)


def _joint_jumps_model(
    scenario: FactorScenario, a: RateLike, b: RateLike, initial: InitialLike, fill_off_diagonal: bool
) -> CopulaCandidate:
    rate_a, rate_b = _rate_paths(scenario, a, b)
    for name, rate in (("a", rate_a), ("b", rate_b)):
        bad = np.flatnonzero(rate.values < 0)
        if bad.size:
            raise NegativeRateError(name, int(bad[0]), float(rate.values[bad[0]]))
    matrices = []
    for a_i, b_i in zip(rate_a.values, rate_b.values):
        matrix = np.array(
            [
                [-a_i, 0.0, 0.0, a_i],
                [0.0, 0.0, 0.0, 0.0],
                [0.0, 0.0, 0.0, 0.0],
                [b_i, 0.0, 0.0, -b_i],
            ]
        )
        if fill_off_diagonal:
            matrix[1] = [b_i, -a_i - b_i, 0.0, a_i]
            matrix[2] = [b_i, 0.0, -a_i - b_i, a_i]
        matrices.append(matrix)
    spec = _switching_spec(scenario, rate_a, rate_b)
    space = spec.space
    if initial is None:
        law, provenance = InitialLaw.point_mass(space, (0, 0)), InitialProvenance.PRODUCT
    else:
        law = initial if isinstance(initial, InitialLaw) else InitialLaw(np.asarray(initial, dtype=float))
        law.check_space(space)
        provenance = InitialProvenance.SUPPLIED
    model = CmcModel(space, GeneratorPath.from_matrices(scenario, matrices), law)
    return CopulaCandidate(model, CopulaKind.CUSTOM, provenance, spec, {"a": rate_a, "b": rate_b})


def joint_jumps(scenario: FactorScenario, a: RateLike, b: RateLike, initial: InitialLike = None) -> CopulaCandidate:
    """
    Four-state chain that only moves between (0,0) and (1,1): up at rate a, down at rate b.

    The states (0,1) and (1,0) are absorbing, so the aggregated rate of component 1 leaving 0 is a
    from (0,0) but 0 from (0,1). The chain is therefore not strongly consistent, although started on
    the diagonal both components are Markov with intensity [[-a, a], [b, -b]].

    Args:
        scenario: The factor scenario.
        a: Rate of (0,0) -> (1,1).
        b: Rate of (1,1) -> (0,0).
        initial: Joint initial law; point mass at (0,0) by default.

    Returns:
        The candidate, with the two switching marginals as its spec.
    """
    return _joint_jumps_model(scenario, a, b, initial, fill_off_diagonal=False)


def joint_jumps_version(
    scenario: FactorScenario, a: RateLike, b: RateLike, initial: InitialLike = None
) -> CopulaCandidate:
    """
    Version of `joint_jumps` that coincides with it on the diagonal but lets (0,1) and (1,0) move.

    Both chains have the same law when started on the diagonal. This one satisfies the aggregation
    condition for both components, with marginal intensities [[-a, a], [b, -b]].

    Args:
        scenario: The factor scenario.
        a: Rate of (0,0) -> (1,1) and of each component leaving 0 off the diagonal.
        b: Rate of (1,1) -> (0,0) and of each component leaving 1 off the diagonal.
        initial: Joint initial law; point mass at (0,0) by default.

    Returns:
        The candidate.
    """
    return _joint_jumps_model(scenario, a, b, initial, fill_off_diagonal=True)


def check_spec_space(candidate: CopulaCandidate, spec: MarginalSpec) -> None:
    """
    Ensures the candidate lives on the product of the spec's component spaces.

    Args:
        candidate: The candidate.
        spec: The marginal spec.

    Raises:
        DimensionMismatchError: If the spaces differ.
    """
    if candidate.model.space.components != spec.space.components:
        raise DimensionMismatchError(spec.space.size, candidate.model.space.size, "product space size")
