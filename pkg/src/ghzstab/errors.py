"""Exception types shared across the package."""


class GhzstabError(Exception):
    """Base class for all package errors."""


class ShapeError(GhzstabError, ValueError):
    """Operands have incompatible shapes or dimensions."""


class SizeError(GhzstabError, ValueError):
    """A requested object exceeds the configured size limits."""


class DomainError(GhzstabError, ValueError):
    """An argument is outside the valid domain of the operation."""


class PreconditionError(GhzstabError, ValueError):
    """A documented precondition of the operation does not hold."""


class InternalConsistencyError(GhzstabError, RuntimeError):
    """Two routes to the same quantity disagree; signals a bug, not bad input."""
