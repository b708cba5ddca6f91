"""Exception hierarchy shared across the package."""


class DuoEmbedError(Exception):
    """Base class for all package-specific errors."""


class IoError(DuoEmbedError):
    """Missing or unreadable file."""


class ParseError(DuoEmbedError):
    """Non-numeric cell encountered while reading a CSV.

    Carries 1-based row/column coordinates of the offending cell.
    """

    def __init__(self, row: int, col: int, cell: str):
        self.row = row
        self.col = col
        self.cell = cell
        super().__init__(f"cannot parse cell {cell!r} at row {row}, col {col}")


class ShapeError(DuoEmbedError):
    """Dimension mismatch or ragged/degenerate input shape."""


class DegenerateError(DuoEmbedError):
    """All cross distances are zero; no positive bandwidth exists."""


class InvalidK(DuoEmbedError):
    """Neighbor or cluster count out of range."""


class InvalidThreshold(DuoEmbedError):
    """Noise-detector thresholds out of range."""


class DomainError(DuoEmbedError):
    """Argument outside the mathematical domain of the operation."""


class ZeroSingularValue(DuoEmbedError):
    """Out-of-sample extension requested at a zero singular value."""


class UnsupportedKind(DuoEmbedError):
    """Unknown generator kind."""


class InsufficientSamples(DuoEmbedError):
    """Too few samples for the requested resampling procedure."""


class ConfigError(DuoEmbedError):
    """Inconsistent run configuration."""


class ConvergenceError(DuoEmbedError):
    """An underlying matrix factorization failed to converge."""
