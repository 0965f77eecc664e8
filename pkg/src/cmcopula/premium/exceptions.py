from cmcopula.exceptions import CmcError


class UnsupportedKindError(CmcError):
    """
    Raised when the closed-form pricer receives a copula it has no oracle for.
    """

    def __init__(self, kind: str) -> None:
        """
        Args:
            kind: Kind of the rejected candidate.
        """
        super().__init__(
            f"Closed-form pricing supports common-jump, weak-only and conditional-independence copulae of "
            f"absorbing two-state components, got {kind}."
        )
        self.kind = kind
