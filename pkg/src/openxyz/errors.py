"""Exception types shared across the package."""


class DomainError(ValueError):
    """Input lies outside the domain where a formula is defined."""


class PoleError(ArithmeticError):
    """Evaluation hit a pole (a zero denominator) of an elliptic expression."""


class SeriesDivergenceError(ArithmeticError):
    """A truncated series failed to converge."""


class ExtractionError(RuntimeError):
    """Zero-root extraction could not produce the expected number of roots.

    The ``residual_map`` attribute, when set, holds the scaled modulus grid
    that was scanned so callers can dump it for inspection.
    """

    def __init__(self, message, residual_map=None):
        super().__init__(message)
        self.residual_map = residual_map


class UnsupportedError(RuntimeError):
    """Requested solver path is not available for the given parameters."""
