"""
Reproduction fixtures: small models whose verdicts are known in closed form.

Every fixture returns a `FixtureResult` made of claims; the fixture passes when all its claims hold.
"""

from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional

import numpy as np

from cmcopula.chain import FactorScenario, InitialLaw, kron
from cmcopula.config import Tolerances
from cmcopula.consistency import Verdict, certify_weak_only, check_asm, check_sm, extract_strong_marginal
from cmcopula.copulae import (
    MarginalSpec,
    build_common_jump,
    build_conditional_independence,
    build_weak_only,
    decompose_weak_only,
    joint_jumps,
    joint_jumps_version,
    validate_precopula,
)
from cmcopula.kolmogorov import closed_form_weak_only, solve_forward, state_distribution
from cmcopula.premium import PoolModel, price, price_closed_form

HORIZON = 1.0
STEP = 0.05


@dataclass
class Claim:
    """
    One checked statement of a fixture.
    """

    claim: str
    passed: bool
    detail: str = ""


@dataclass
class FixtureResult:
    """
    Outcome of one fixture.
    """

    name: str
    claims: List[Claim] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        """
        True when every claim holds.
        """
        return all(claim.passed for claim in self.claims)

    def add(self, claim: str, passed: bool, detail: str = "") -> None:
        """
        Records a claim.

        Args:
            claim: The statement.
            passed: Whether it holds.
            detail: Measured values behind the verdict.
        """
        self.claims.append(Claim(claim, bool(passed), detail))

    def to_dict(self) -> Dict[str, Any]:
        """
        JSON-ready form.

        Returns:
            Dictionary with the name, overall verdict and claims.
        """
        return {
            "name": self.name,
            "passed": self.passed,
            "claims": [{"claim": c.claim, "passed": c.passed, "detail": c.detail} for c in self.claims],
        }


@dataclass(frozen=True)
class FixtureContext:
    """
    Settings shared by all fixtures of a run.
    """

    tolerances: Tolerances = Tolerances()
    seed: Optional[int] = None
    n_paths: int = 100_000


def _scenario() -> FactorScenario:
    return FactorScenario.uniform(HORIZON, STEP)


def _joint_jumps(context: FixtureContext) -> FixtureResult:
    result = FixtureResult("example-3.6")
    a, b = 1.0, 2.0
    candidate = joint_jumps(_scenario(), a, b)
    tol = context.tolerances.structural

    for k in range(2):
        report = check_asm(candidate.model, k, tol)
        witness = report.witnesses[0] if report.witnesses else None
        detail = witness.describe() if witness else "no witness"
        against_zero = any(w.rhs == 0.0 and w.lhs in (a, b) for w in report.witnesses)
        result.add(
            f"ASM-{k + 1} fails with a witness comparing a rate against 0", not report.passed and against_zero, detail
        )

    diagonal = candidate.model.with_initial(InitialLaw(np.array([0.4, 0.0, 0.0, 0.6])))
    report = check_sm(diagonal, 0, tol)
    marginal = report.marginal
    rates_ok = marginal is not None and np.allclose(marginal.stacked()[:, 0, 1], a) and np.allclose(
        marginal.stacked()[:, 1, 0], b
    )
    result.add(
        "SM-1 holds when only (0,0) and (1,1) are charged, with marginal rates a and b",
        report.passed and rates_ok,
        f"verdict {report.verdict('SM').value}",
    )

    charged = candidate.model.with_initial(InitialLaw(np.array([0.5, 0.5, 0.0, 0.0])))
    report = check_sm(charged, 0, tol)
    result.add("SM-1 fails when (0,1) is charged", not report.passed, f"{len(report.witnesses)} witnesses")
    return result


def _joint_jumps_version(context: FixtureContext) -> FixtureResult:
    result = FixtureResult("example-3.8")
    a, b = 1.0, 2.0
    scenario = _scenario()
    version = joint_jumps_version(scenario, a, b)
    original = joint_jumps(scenario, a, b)
    tol = context.tolerances.structural

    for k in range(2):
        report = check_asm(version.model, k, tol)
        rates = None if report.marginal is None else report.marginal.stacked()
        holds = rates is not None and np.allclose(rates[:, 0, 1], a, atol=tol) and np.allclose(rates[:, 1, 0], b)
        result.add(f"ASM-{k + 1} holds with marginal rates a and b", report.passed and holds)

    first = state_distribution(version.model).probs
    second = state_distribution(original.model).probs
    deviation = float(np.max(np.abs(first - second)))
    result.add(
        "both versions give the same law from (0,0)",
        deviation <= context.tolerances.transition,
        f"max deviation {deviation:.3g}",
    )
    return result


def _kron_copula(context: FixtureContext) -> FixtureResult:
    result = FixtureResult("kron-copula")
    scenario = _scenario()
    spec = MarginalSpec.absorbing(scenario, [1.0, 2.0])
    candidate = build_conditional_independence(spec)
    verdict = validate_precopula(candidate, tol=context.tolerances.structural)
    result.add("conditionally independent copula passes CMC-1 to CMC-4", verdict.strong_passed)

    for k, target in enumerate(spec.targets):
        marginal = extract_strong_marginal(candidate.model, k, context.tolerances.structural)
        error = float(np.max(np.abs(marginal.stacked() - target.intensity.stacked())))
        result.add(f"strong marginal {k + 1} equals its target", error <= 1e-12, f"error {error:.3g}")

    joint = solve_forward(candidate.model)
    components = [solve_forward(target.intensity) for target in spec.targets]
    error = max(
        float(np.max(np.abs(joint.from_origin[j] - kron(components[0].from_origin[j], components[1].from_origin[j]))))
        for j in range(scenario.grid.size)
    )
    result.add("joint transition field is the Kronecker product of the marginal ones", error <= 1e-8, f"{error:.3g}")
    return result


def _common_jump(context: FixtureContext) -> FixtureResult:
    result = FixtureResult("common-jump")
    scenario = _scenario()
    a, b = 1.0, 2.0
    independent = build_conditional_independence(MarginalSpec.absorbing(scenario, [a, b]))
    for c in (0.0, 0.25, 0.5):
        candidate = build_common_jump(scenario, a, b, c)
        verdict = validate_precopula(candidate, tol=context.tolerances.structural)
        assert candidate.spec is not None
        errors = [
            float(np.max(np.abs(extract_strong_marginal(candidate.model, k).stacked() - target.intensity.stacked())))
            for k, target in enumerate(candidate.spec.targets)
        ]
        result.add(
            f"common jump c={c:g} is a strong copula of the same marginals",
            verdict.strong_passed and max(errors) <= 1e-12,
            f"marginal error {max(errors):.3g}",
        )
    zero = build_common_jump(scenario, a, b, 0.0)
    difference = float(np.max(np.abs(zero.generator - independent.generator)))
    result.add("c=0 coincides with conditional independence", difference == 0.0, f"{difference:.3g}")
    return result


def _weak_only(context: FixtureContext) -> FixtureResult:
    result = FixtureResult("weak-only")
    scenario = _scenario()
    candidate = build_weak_only(scenario, 1.0, 1.0, 1.0)
    model = candidate.model
    solved = solve_forward(model)

    error = max(
        float(np.max(np.abs(solved.from_origin[j] - closed_form_weak_only(1.0, 1.0, 1.0, 0.0, float(t), scenario))))
        for j, t in enumerate(scenario.grid)
    )
    result.add("forward solution matches the closed form", error <= context.tolerances.transition, f"{error:.3g}")

    verdict = validate_precopula(candidate)
    result.add("aggregation condition fails", verdict.strong["CMC-1"] == Verdict.FAIL)
    result.add(
        "weak marginals match the implied intensities",
        verdict.weak["WCMC-4"] == Verdict.PASS,
        f"deviation {verdict.deviations['WCMC-4']:.3g}",
    )

    certified = certify_weak_only(model, 0, field=solved)
    result.add(f"weak-only certified: {str(certified.certified).lower()} (c=1)", certified.certified, certified.reason)

    independent = certify_weak_only(build_weak_only(scenario, 1.0, 1.0, 0.0).model, 0)
    result.add(
        f"weak-only certified: {str(independent.certified).lower()} (c=0)",
        not independent.certified,
        independent.reason,
    )

    decomposition = decompose_weak_only(candidate)
    result.add(
        "generator splits into Kronecker part and joint-jump corrections",
        decomposition.reconstruction_error <= 1e-10,
        f"error {decomposition.reconstruction_error:.3g}",
    )
    return result


def _premium(context: FixtureContext) -> FixtureResult:
    result = FixtureResult("premium")
    if context.seed is None:
        raise ValueError("the premium fixture needs a seed")
    scenario = _scenario()
    z = context.tolerances.z_threshold
    pool = PoolModel(build_weak_only(scenario, 1.0, 1.0, 1.0), evaluation_time=0.5)
    quote = price(pool, context.n_paths, context.seed)
    oracle = price_closed_form(pool)

    low, middle, high = quote.pool(0, (0, 1)), quote.individual(0, 0), quote.pool(0, (0, 0))
    separated = (
        low.premium + z * low.standard_error < middle.premium - z * middle.standard_error
        and middle.premium + z * middle.standard_error < high.premium - z * high.standard_error
    )
    result.add(
        "pool premium given (0,1) < individual premium given 0 < pool premium given (0,0)",
        separated,
        f"{low.premium:.5f} < {middle.premium:.5f} < {high.premium:.5f}",
    )

    worst = 0.0
    for entry in quote.entries:
        try:
            reference = oracle.find(entry.component, entry.filtration, entry.stratum)
        except KeyError:
            continue
        if entry.standard_error > 0:
            worst = max(worst, abs(entry.premium - reference.premium) / entry.standard_error)
    result.add("simulated premia agree with the closed form", worst <= z, f"max |z| {worst:.3g}")

    independent = PoolModel(build_weak_only(scenario, 1.0, 1.0, 0.0), evaluation_time=0.5)
    simulated = price(independent, context.n_paths, context.seed)
    scores = simulated.gap_z_scores(0)
    exact = price_closed_form(independent).gaps(0)
    result.add(
        "without joint jumps pool information does not change the premium",
        all(abs(gap) <= 1e-10 for gap in exact.values()),
        f"closed-form gaps {[float(f'{gap:.3g}') for gap in exact.values()]}",
    )
    worst_gap = max((abs(score) for score in scores.values()), default=0.0)
    result.add(
        "without joint jumps the simulated gaps are within noise",
        bool(scores) and worst_gap <= z,
        f"simulated gaps {[round(gap, 5) for gap in simulated.gaps(0).values()]}, max |z| {worst_gap:.3g}",
    )
    return result


FIXTURES: Dict[str, Callable[[FixtureContext], FixtureResult]] = {
    "example-3.6": _joint_jumps,
    "example-3.8": _joint_jumps_version,
    "kron-copula": _kron_copula,
    "common-jump": _common_jump,
    "weak-only": _weak_only,
    "premium": _premium,
}

FIXTURE_ALIASES: Dict[str, str] = {
    "joint-jumps": "example-3.6",
    "joint-jumps-version": "example-3.8",
}

STOCHASTIC_FIXTURES = frozenset({"premium"})


def fixture_names() -> List[str]:
    """
    Every name `reproduce` accepts, aliases included.

    Returns:
        Sorted fixture names.
    """
    return sorted({*FIXTURES, *FIXTURE_ALIASES})


def resolve_fixture(name: str) -> str:
    """
    Maps an alias to the fixture it stands for.

    Args:
        name: Fixture name or alias.

    Returns:
        Key of the fixture in FIXTURES.

    Raises:
        KeyError: If the name is unknown.
    """
    resolved = FIXTURE_ALIASES.get(name, name)
    if resolved not in FIXTURES:
        raise KeyError(name)
    return resolved
