from cmcopula.exceptions import CmcError


class CopulaError(CmcError):
    """
    Base class for errors raised while building copula candidates.
    """


class ConstraintViolatedError(CopulaError):
    """
    Raised when the common-jump rate leaves [0, min(a, b)] on some cell.
    """

    def __init__(self, cell: int, c: float, bound: float) -> None:
        """
        Args:
            cell: Grid cell with the violation.
            c: Common-jump rate on that cell.
            bound: min(a, b) on that cell.
        """
        super().__init__(f"Common-jump rate c={c:.6g} on cell {cell} must lie in [0, {bound:.6g}].")
        self.cell = cell
        self.c = c
        self.bound = bound


class NonPositiveRateError(CopulaError):
    """
    Raised when a rate that must be strictly positive is not.
    """

    def __init__(self, name: str, cell: int, value: float) -> None:
        """
        Args:
            name: Name of the rate.
            cell: Grid cell with the violation.
            value: The offending value.
        """
        super().__init__(f"Rate {name} must be positive, got {value:.6g} on cell {cell}.")
        self.name = name
        self.cell = cell
        self.value = value


class HeterogeneousMarginalsError(CopulaError):
    """
    Raised when perfect dependence is requested for components with different target laws.
    """

    def __init__(self, k: int) -> None:
        """
        Args:
            k: First component whose target differs from component 0.
        """
        super().__init__(f"Perfect dependence needs identical marginals; component {k} differs from component 0.")
        self.k = k


class WrongKindError(CopulaError):
    """
    Raised when an operation receives a candidate of another construction.
    """

    def __init__(self, expected: str, actual: str) -> None:
        """
        Args:
            expected: Kind the operation works on.
            actual: Kind of the candidate it received.
        """
        super().__init__(f"Expected a {expected} candidate, got {actual}.")
        self.expected = expected
        self.actual = actual


class InitialCouplingError(CopulaError):
    """
    Raised when a supplied joint initial law does not have the prescribed margins.
    """

    def __init__(self, k: int, deviation: float) -> None:
        """
        Args:
            k: Component whose initial margin is off.
            deviation: Sup-norm distance to the prescribed margin.
        """
        super().__init__(f"Initial margin of component {k} deviates from its target by {deviation:.3g}.")
        self.k = k
        self.deviation = deviation
