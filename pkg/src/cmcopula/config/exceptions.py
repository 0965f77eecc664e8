from cmcopula._types import PathLike
from cmcopula.exceptions import CmcError


class ConfigParseError(CmcError):
    """
    Raised when a model config cannot be read or does not match the schema.
    """

    def __init__(self, path: PathLike, detail: str) -> None:
        """
        Args:
            path: The config file.
            detail: What went wrong.
        """
        super().__init__(f"Invalid config {path}: {detail}")
        self.path = str(path)
        self.detail = detail
