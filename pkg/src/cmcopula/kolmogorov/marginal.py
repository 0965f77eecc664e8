from dataclasses import dataclass
from typing import Optional

import numpy as np

from cmcopula.chain import ProductStateSpace
from cmcopula.kolmogorov.field import TransitionField


@dataclass(frozen=True, eq=False)
class ComponentTransitionField:
    """
    Transition probabilities of component k read off a joint field.

    For every full starting state x the aggregate row sums p_{x y}(s, t) over all y sharing y^k.
    The component is Markov in the joint filtration on [s, t] exactly when these rows do not depend
    on x^{-k}; in that case they form the component transition matrix.
    """

    field: TransitionField
    space: ProductStateSpace
    k: int

    def __post_init__(self) -> None:
        self.space.component_indicator(self.k)

    def aggregate(self, s: float, t: float) -> np.ndarray:
        """
        Aggregated rows for all full starting states.

        Args:
            s: Start time.
            t: End time.

        Returns:
            Array of shape (d, |S_k|); row x holds P(X^k_t = y^k | X_s = x).
        """
        return self.field.at(s, t) @ self.space.component_indicator(self.k)

    def spread(self, s: float, t: float, support: Optional[np.ndarray] = None) -> float:
        """
        Largest difference between aggregated rows of starting states that share x^k.

        Args:
            s: Start time.
            t: End time.
            support: Boolean mask of starting states to compare; all states by default.

        Returns:
            The maximal deviation (zero when the rows do not depend on x^{-k}).
        """
        rows = self.aggregate(s, t)
        own = self.space.coordinates[:, self.k]
        mask = np.ones(self.space.size, dtype=bool) if support is None else np.asarray(support, dtype=bool)
        worst = 0.0
        for x_k in range(self.space.components[self.k]):
            group = rows[(own == x_k) & mask]
            if group.shape[0] > 1:
                worst = max(worst, float(np.max(group.max(axis=0) - group.min(axis=0))))
        return worst

    def matrix(self, s: float, t: float, tol: float = 1e-8) -> Optional[np.ndarray]:
        """
        Component transition matrix P_k(s, t), if the aggregate rows do not depend on x^{-k}.

        Args:
            s: Start time.
            t: End time.
            tol: Allowed spread between rows sharing x^k.

        Returns:
            The |S_k| x |S_k| matrix, or None when the rows differ by more than tol.
        """
        if self.spread(s, t) > tol:
            return None
        rows = self.aggregate(s, t)
        own = self.space.coordinates[:, self.k]
        first = np.array([np.flatnonzero(own == x_k)[0] for x_k in range(self.space.components[self.k])])
        return rows[first]


def marginal_transition_field(field: TransitionField, space: ProductStateSpace, k: int) -> ComponentTransitionField:
    """
    Component-k view of a joint transition field.

    Args:
        field: Joint transition field.
        space: State space of the field.
        k: Component index.

    Returns:
        The component transition field.
    """
    return ComponentTransitionField(field, space, k)
