"""Exception hierarchy shared by all modules."""


class PolyIneqError(Exception):
    """Base class for every error raised by the package."""


class BodyError(PolyIneqError, ValueError):
    """Malformed or degenerate convex body (schema, boundedness, interior)."""


class DomainError(PolyIneqError, ValueError):
    """An argument lies outside the domain of an operation.

    Raised for dimension mismatches, zero or non-unit directions, and points
    that are required to be interior but are not.
    """


class NumericalError(PolyIneqError, RuntimeError):
    """A numeric procedure failed: non-convergence, LP breakdown, coarse grid."""
