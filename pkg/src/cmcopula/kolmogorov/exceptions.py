from cmcopula.exceptions import CmcError


class NonFiniteEntriesError(CmcError):
    """
    Raised when a propagator blows up, which only happens for invalid generators.
    """

    def __init__(self, cell: int) -> None:
        """
        Args:
            cell: Grid cell whose propagator has non-finite entries.
        """
        super().__init__(f"Propagator of cell {cell} has non-finite entries.")
        self.cell = cell


class StochasticityError(CmcError):
    """
    Raised when a solved transition matrix is not row-stochastic.
    """

    def __init__(self, cell: int, residual: float) -> None:
        """
        Args:
            cell: Grid cell whose propagator failed the check.
            residual: Largest deviation from a stochastic row.
        """
        super().__init__(f"Propagator of cell {cell} deviates from a stochastic matrix by {residual:.3g}.")
        self.cell = cell
        self.residual = residual


class NegativeRateError(CmcError):
    """
    Raised when a closed form receives a negative scalar rate.
    """

    def __init__(self, name: str, cell: int, value: float) -> None:
        """
        Args:
            name: Name of the rate (a, b or c).
            cell: Grid cell with the negative value.
            value: The offending rate.
        """
        super().__init__(f"Rate {name} is negative on cell {cell}: {value:.6g}.")
        self.name = name
        self.cell = cell
        self.value = value


class OffGridTimeError(CmcError):
    """
    Raised when a grid-only lookup receives a time that is not a grid point.
    """

    def __init__(self, time: float) -> None:
        """
        Args:
            time: The off-grid time.
        """
        super().__init__(f"Time {time} is not a grid point; use `at` for off-grid times.")
        self.time = time
