"""Exception hierarchy shared by all modules."""


class KorenblumError(Exception):
    """Base class for every error raised by this package."""


class DomainError(KorenblumError, ValueError):
    """An argument lies outside the region where a formula is defined."""


class NonConvergenceError(KorenblumError, ArithmeticError):
    """A truncated product or series hit its term cap before its target accuracy."""


class DegenerateCriterionError(KorenblumError, ArithmeticError):
    """The denominator integral of a criterion is (numerically) zero."""


class ConsistencyError(KorenblumError, RuntimeError):
    """Two independent routes to the same quantity disagree."""


class InvalidBracketError(KorenblumError, ValueError):
    """No pass/fail transition could be found for a constant search."""


class NonMonotoneError(KorenblumError, RuntimeError):
    """Pass/fail along a scan of the constant is not monotone."""
