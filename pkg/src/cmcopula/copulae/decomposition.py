from dataclasses import dataclass
from typing import Any, Dict

import numpy as np

from cmcopula.chain import kron_sum
from cmcopula.copulae.candidate import CopulaCandidate, CopulaKind
from cmcopula.copulae.exceptions import WrongKindError


@dataclass(frozen=True, eq=False)
class WeakOnlyDecomposition:
    """
    Per-cell split of a weak-only generator, every array of shape (M, 4, 4):
    generator = kron_part + joint - first_excess - second_excess.

    `kron_part` is the Kronecker sum of the implied marginal intensities, `joint` carries the
    simultaneous jump, `first_excess` the part of the implied rate of component 2 that is not b and
    `second_excess` the part of the implied rate of component 1 that is not a.
    """

    kron_part: np.ndarray
    joint: np.ndarray
    first_excess: np.ndarray
    second_excess: np.ndarray
    reconstruction_error: float

    def to_dict(self) -> Dict[str, Any]:
        """
        JSON-ready form.

        Returns:
            Dictionary with all matrices and the reconstruction error.
        """
        return {
            "kron_part": self.kron_part.tolist(),
            "B12": self.joint.tolist(),
            "B1": self.first_excess.tolist(),
            "B2": self.second_excess.tolist(),
            "reconstruction_error": self.reconstruction_error,
        }


def _absorbing(rate: float) -> np.ndarray:
    return np.array([[-rate, rate], [0.0, 0.0]])


def decompose_weak_only(candidate: CopulaCandidate) -> WeakOnlyDecomposition:
    """
    Writes the weak-only generator as the Kronecker sum of its implied marginal intensities plus
    correction terms that all carry the joint-jump rate c.

    With q1 = psi^1 - a and q2 = psi^2 - b:
    B12 has row (0,0) equal to [-c, 0, 0, c];
    B1 moves component 2 from 0 to 1 at rate q2 in the rows (0,0) and (1,0);
    B2 moves component 1 from 0 to 1 at rate q1 in the rows (0,0) and (0,1).

    Args:
        candidate: Candidate built by `build_weak_only`.

    Returns:
        The decomposition and its reconstruction error.

    Raises:
        WrongKindError: If the candidate is not a weak-only candidate.
    """
    if candidate.kind != CopulaKind.WEAK_ONLY or candidate.spec is None:
        raise WrongKindError(CopulaKind.WEAK_ONLY.value, candidate.kind.value)

    first, second = candidate.spec.targets
    rate_a, rate_b, rate_c = candidate.rates["a"], candidate.rates["b"], candidate.rates["c"]
    identity = np.eye(2)

    kron_parts, joints, first_excess, second_excess = [], [], [], []
    for cell in range(candidate.model.generator.n_cells):
        psi1 = first.intensity.cells[cell].entries
        psi2 = second.intensity.cells[cell].entries
        kron_parts.append(kron_sum(psi1, psi2).entries)

        joint = np.zeros((4, 4))
        joint[0, 0], joint[0, 3] = -rate_c.values[cell], rate_c.values[cell]
        joints.append(joint)

        q1 = psi1[0, 1] - rate_a.values[cell]
        q2 = psi2[0, 1] - rate_b.values[cell]
        first_excess.append(np.kron(identity, _absorbing(q2)))
        second_excess.append(np.kron(_absorbing(q1), identity))

    kron_part = np.stack(kron_parts)
    decomposition = kron_part + np.stack(joints) - np.stack(first_excess) - np.stack(second_excess)
    error = float(np.max(np.abs(decomposition - candidate.model.generator.stacked())))
    return WeakOnlyDecomposition(
        kron_part=kron_part,
        joint=np.stack(joints),
        first_excess=np.stack(first_excess),
        second_excess=np.stack(second_excess),
        reconstruction_error=error,
    )

