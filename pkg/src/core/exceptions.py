from pathlib import Path


class WristcastError(Exception):
    """Base class for every error raised by the package."""


class ConfigError(WristcastError, ValueError):
    """Invalid configuration or command-line arguments."""


class DataFormatError(WristcastError, ValueError):
    """A session file does not follow the E4 export layout."""

    def __init__(self, path: Path | str, message: str, line: int | None = None):
        self.path = Path(path)
        self.line = line
        location = f"{self.path.name}:{line}" if line is not None else self.path.name
        super().__init__(f"{location}: {message}")


class RateMismatchError(DataFormatError):
    """Declared sample rate differs from the canonical E4 rate."""


class FilterDesignError(WristcastError, ValueError):
    """Filter parameters outside the realizable range."""


class ShapeError(WristcastError, ValueError):
    """Tensor or window shape incompatible with the operation."""


class InsufficientDataError(WristcastError, ValueError):
    """Not enough examples, subjects or weeks for the requested operation."""


class ArchitectureMismatchError(WristcastError, ValueError):
    """A parameter file was written for a different network architecture."""


class ParamsFormatError(WristcastError, ValueError):
    """A parameter file is truncated or unreadable."""


class GridStateError(WristcastError, ValueError):
    """The experiment grid state violates its invariants."""


class MalformedCurveError(WristcastError, ValueError):
    """ROC points are not a monotone curve from (0,0) to (1,1)."""


class DivergenceError(WristcastError, RuntimeError):
    """Training produced a non-finite loss."""


class MissingCacheError(WristcastError, RuntimeError):
    """Backward pass called before the matching forward pass."""
