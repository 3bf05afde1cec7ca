"""Exception types shared across modules."""


class DomainError(ValueError):
    """Valid input that falls outside an operation's precondition."""


class NotAnEigenvalueError(DomainError):
    """The requested value is not an eigenvalue, so the object is undefined."""


class InternalConsistencyError(RuntimeError):
    """A proven structural property failed; this indicates a bug, not bad input."""
