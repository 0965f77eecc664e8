from cmcopula.exceptions import CmcError


class FixtureFailedError(CmcError):
    """
    Raised when a reproduction fixture cannot be evaluated.
    """

    def __init__(self, name: str, detail: str) -> None:
        """
        Args:
            name: Fixture name.
            detail: What went wrong.
        """
        super().__init__(f"Fixture {name} failed: {detail}")
        self.name = name
        self.detail = detail
