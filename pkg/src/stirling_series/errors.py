"""Exception types shared across the package."""


class StirlingSeriesError(Exception):
    """Base class for all errors raised by this package."""


class ContextMismatchError(StirlingSeriesError, ValueError):
    """Two polynomials or series live in different parameter rings."""


class UnknownSymbolError(StirlingSeriesError, KeyError):
    pass


class TruncationError(StirlingSeriesError):
    """The series vanishes up to its truncation order; increase the order."""


class RateHypothesisError(StirlingSeriesError, ValueError):
    """The rate lemma needs a difference exponent k > 1."""


class OptimizationError(StirlingSeriesError):
    """Coefficient elimination could not proceed."""


class DomainError(StirlingSeriesError, ValueError):
    pass


class PrecisionError(StirlingSeriesError):
    """A numeric decision is indeterminate at the working precision."""
