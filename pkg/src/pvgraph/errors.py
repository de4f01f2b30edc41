"""Exception types shared across the package."""


class PvgError(Exception):
    """Base class for all package errors."""


class InvalidParams(PvgError):
    """A parameter object violates its invariants."""


class TooShort(PvgError):
    """Input series cannot supply the requested segments."""


class RateMismatch(PvgError):
    """Source rate is not an integer multiple of the target rate."""


class IndexOutOfRange(PvgError):
    """Node index outside the series."""


class Disconnected(PvgError):
    """Graph has unreachable node pairs."""

    def __init__(self, n_components):
        self.n_components = n_components
        super().__init__(f"graph is disconnected ({n_components} components)")


class DegenerateBaseline(PvgError):
    """Random baseline has zero clustering; sigma is undefined."""


class InsufficientSupport(PvgError):
    """Degree distribution has too few distinct values to fit."""


class ParseError(PvgError):
    """Malformed input file."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
