import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from cmcopula.chain import GeneratorError, validate_generator
from cmcopula.chain.generator import STRUCTURAL_TOL
from cmcopula.consistency import Verdict, Witness, check_wm_necessary
from cmcopula.consistency.weak import WEAK_TOL
from cmcopula.copulae.builders import check_spec_space
from cmcopula.copulae.candidate import CopulaCandidate
from cmcopula.copulae.spec import MarginalSpec

logger = logging.getLogger(__name__)

STRONG_CONDITIONS = ("CMC-1", "CMC-2", "CMC-3", "CMC-4")
WEAK_CONDITIONS = ("WCMC-1", "WCMC-2", "WCMC-3", "WCMC-4")


@dataclass
class PrecopulaVerdict:
    """
    Verdicts of the strong (CMC-*) and weak (WCMC-*) pre-copula conditions for one candidate.
    """

    strong: Dict[str, Verdict] = field(default_factory=dict)
    weak: Dict[str, Verdict] = field(default_factory=dict)
    deviations: Dict[str, float] = field(default_factory=dict)
    witnesses: List[Witness] = field(default_factory=list)

    @property
    def strong_passed(self) -> bool:
        """
        True when every strong condition passed.
        """
        return all(self.strong.get(name) == Verdict.PASS for name in STRONG_CONDITIONS)

    @property
    def weak_passed(self) -> bool:
        """
        True when every weak condition passed.
        """
        return all(self.weak.get(name) == Verdict.PASS for name in WEAK_CONDITIONS)

    def to_dict(self) -> Dict[str, Any]:
        """
        JSON-ready form.

        Returns:
            Dictionary with both verdict families, deviations and witnesses.
        """
        return {
            "strong": {name: verdict.value for name, verdict in self.strong.items()},
            "weak": {name: verdict.value for name, verdict in self.weak.items()},
            "strong_passed": self.strong_passed,
            "weak_passed": self.weak_passed,
            "deviations": dict(sorted(self.deviations.items())),
            "witnesses": [witness.to_dict() for witness in self.witnesses],
        }


def _aggregation(candidate: CopulaCandidate, spec: MarginalSpec, tol: float) -> Tuple[Verdict, float, List[Witness]]:
    """
    Compares, for every full state x and every y^k != x^k, the total intensity of jumping into
    {y : y^k fixed} with the target psi^{k; x^k y^k}. Keeps the worst witness per component and cell.
    """
    model = candidate.model
    space = model.space
    witnesses: List[Witness] = []
    deviation = 0.0
    for k, target in enumerate(spec.targets):
        own = space.coordinates[:, k]
        indicator = space.component_indicator(k)
        for cell in range(model.generator.n_cells):
            aggregates = model.generator.cells[cell].entries @ indicator
            expected = target.intensity.cells[cell].entries[own]
            gaps = np.abs(aggregates - expected)
            gaps[np.arange(space.size), own] = 0.0
            x, y_k = np.unravel_index(int(np.argmax(gaps)), gaps.shape)
            worst = float(gaps[x, y_k])
            deviation = max(deviation, worst)
            if worst > tol:
                witnesses.append(
                    Witness(
                        condition="CMC-1",
                        cell=cell,
                        x=space.multi_index(int(x)),
                        x_bar=None,
                        y_k=int(y_k),
                        lhs=float(aggregates[x, y_k]),
                        rhs=float(expected[x, y_k]),
                    )
                )
    return (Verdict.FAIL if witnesses else Verdict.PASS), deviation, witnesses


def _canonical(candidate: CopulaCandidate, tol: float) -> Verdict:
    generator = candidate.model.generator
    try:
        for cell in generator.cells:
            validate_generator(cell.entries, tol * generator.dimension)
    except GeneratorError as error:
        logger.info("Candidate generator is not canonical: %s", error)
        return Verdict.FAIL
    if not np.isfinite(generator.integrated_exit_rate()):
        return Verdict.FAIL
    return Verdict.PASS


def _initial_margins(candidate: CopulaCandidate, spec: MarginalSpec) -> float:
    model = candidate.model
    return max(
        float(np.max(np.abs(model.initial.marginal(model.space, k) - target.initial)))
        for k, target in enumerate(spec.targets)
    )


def validate_precopula(
    candidate: CopulaCandidate,
    spec: Optional[MarginalSpec] = None,
    tol: float = STRUCTURAL_TOL,
    weak_tol: float = WEAK_TOL,
) -> PrecopulaVerdict:
    """
    Checks the finitely checkable pre-copula conditions of a candidate against marginal targets.

    Strong conditions:
        CMC-1: aggregated intensities equal the targets from every full state.
        CMC-2: every cell generator is valid and the integrated exit rate is finite.
        CMC-3: the initial law does not depend on the scenario, which holds by construction.
        CMC-4: the component initial laws equal the target initial laws.

    The weak conditions WCMC-1 to WCMC-3 repeat CMC-2 to CMC-4, and WCMC-4 compares the weak marginal
    intensity of every component with its target within `weak_tol`.

    Args:
        candidate: The candidate.
        spec: Targets; those stored on the candidate by default.
        tol: Tolerance of the algebraic conditions.
        weak_tol: Tolerance of the weak marginal comparison.

    Returns:
        The verdicts. Failing conditions never raise.

    Raises:
        ValueError: If no spec is given and the candidate has none.
        DimensionMismatchError: If the candidate does not live on the spec's product space.
    """
    spec = spec or candidate.spec
    if spec is None:
        raise ValueError("validate_precopula needs marginal targets.")
    check_spec_space(candidate, spec)

    verdict = PrecopulaVerdict()
    aggregation, deviation, witnesses = _aggregation(candidate, spec, tol)
    canonical = _canonical(candidate, tol)
    initial_deviation = _initial_margins(candidate, spec)
    initial = Verdict.PASS if initial_deviation <= tol else Verdict.FAIL

    verdict.strong = {"CMC-1": aggregation, "CMC-2": canonical, "CMC-3": Verdict.PASS, "CMC-4": initial}
    verdict.deviations.update({"CMC-1": deviation, "CMC-4": initial_deviation, "WCMC-3": initial_deviation})
    verdict.witnesses.extend(witnesses)

    weak_marginals = Verdict.PASS
    weak_deviation = 0.0
    for k, target in enumerate(spec.targets):
        report = check_wm_necessary(candidate.model, k, target=target.intensity, tol=weak_tol)
        component_verdict = next(iter(report.verdicts.values()))
        weak_deviation = max(weak_deviation, max(report.max_deviation.values(), default=0.0))
        verdict.witnesses.extend(report.witnesses)
        if component_verdict == Verdict.FAIL:
            weak_marginals = Verdict.FAIL
        elif component_verdict == Verdict.NOT_APPLICABLE and weak_marginals == Verdict.PASS:
            weak_marginals = Verdict.NOT_APPLICABLE

    verdict.weak = {"WCMC-1": canonical, "WCMC-2": Verdict.PASS, "WCMC-3": initial, "WCMC-4": weak_marginals}
    verdict.deviations["WCMC-4"] = weak_deviation
    logger.debug("Pre-copula verdicts for %s candidate: %s", candidate.kind.value, verdict.to_dict()["strong"])
    return verdict
