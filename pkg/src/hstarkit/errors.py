"""Exception types shared across the toolkit."""


class HstarkitError(Exception):
    """Base class for all errors raised by this package."""


class DimensionError(HstarkitError):
    """A matrix or vector has the wrong shape for the requested operation."""


class SingularMatrixError(HstarkitError):
    """A square system has no unique solution."""


class InvalidWeightError(HstarkitError):
    """A weight vector violates the admissibility requirements of the caller."""


class DegenerateSimplexError(HstarkitError):
    """Vertex data that is not affinely independent."""


class PreconditionError(HstarkitError):
    """A documented precondition of an operation does not hold."""


class InvariantViolation(HstarkitError):
    """An internal consistency check failed; indicates a bug, not bad input."""
