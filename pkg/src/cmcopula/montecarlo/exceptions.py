from typing import Any

from cmcopula.exceptions import CmcError


class SimulationError(CmcError):
    """
    Base class for errors raised by the Monte Carlo layer.
    """


class InvalidSeedStreamError(SimulationError):
    """
    Raised when a master seed cannot key the per-block random streams.
    """

    def __init__(self, seed: Any) -> None:
        """
        Args:
            seed: The rejected seed.
        """
        super().__init__(f"Seed must be a non-negative integer, got {seed!r}.")
        self.seed = seed


class InsufficientSamplesError(SimulationError):
    """
    Raised when a stratum holds fewer paths than an estimator needs.
    """

    def __init__(self, stratum: Any, count: int, required: int) -> None:
        """
        Args:
            stratum: Label of the stratum.
            count: Number of paths in it.
            required: Minimum number of paths.
        """
        super().__init__(f"Stratum {stratum} holds {count} paths, at least {required} are required.")
        self.stratum = stratum
        self.count = count
        self.required = required
