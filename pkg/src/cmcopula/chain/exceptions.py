from typing import Tuple

from cmcopula.exceptions import CmcError


class GeneratorError(CmcError):
    """
    Base class for violations of the generator (intensity) matrix invariants.
    """


class NotSquareError(GeneratorError):
    """
    Raised when a candidate generator is not a square matrix.
    """

    def __init__(self, shape: Tuple[int, ...]) -> None:
        """
        Args:
            shape: Shape of the offending array.
        """
        super().__init__(f"Generator must be a square matrix, got shape {shape}.")
        self.shape = shape


class NegativeOffDiagonalError(GeneratorError):
    """
    Raised when an off-diagonal intensity is negative.
    """

    def __init__(self, row: int, col: int, value: float) -> None:
        """
        Args:
            row: Row of the offending entry.
            col: Column of the offending entry.
            value: The negative intensity.
        """
        super().__init__(f"Negative off-diagonal entry {value:.6g} at ({row}, {col}).")
        self.row = row
        self.col = col
        self.value = value


class RowSumNonzeroError(GeneratorError):
    """
    Raised when a generator row does not sum to zero.
    """

    def __init__(self, row: int, residual: float) -> None:
        """
        Args:
            row: Index of the offending row.
            residual: Row sum (should be zero).
        """
        super().__init__(f"Row {row} sums to {residual:.6g} instead of 0.")
        self.row = row
        self.residual = residual


class DimensionMismatchError(CmcError):
    """
    Raised when objects built over different state spaces are combined.
    """

    def __init__(self, expected: int, actual: int, what: str = "dimension") -> None:
        """
        Args:
            expected: Expected size.
            actual: Size that was supplied.
            what: Name of the mismatching quantity.
        """
        super().__init__(f"Mismatched {what}: expected {expected}, got {actual}.")
        self.expected = expected
        self.actual = actual


class StateOutOfRangeError(CmcError):
    """
    Raised when a state (or one of its coordinates) lies outside the state space.
    """

    def __init__(self, index: int, bound: int) -> None:
        """
        Args:
            index: The offending index.
            bound: Exclusive upper bound for the index.
        """
        super().__init__(f"Index {index} out of range [0, {bound}).")
        self.index = index
        self.bound = bound


class ScenarioError(CmcError):
    """
    Raised when a factor scenario grid or its values are malformed.
    """


class InitialLawError(CmcError):
    """
    Raised when an initial law is not a probability vector.
    """
