"""Exception hierarchy shared by every solver and the command-line layer."""


class GaspError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(GaspError, ValueError):
    """An input violates a precondition (wrong shape, unknown index, bad value)."""


class ResourceError(GaspError):
    """An exact search would exceed its budget.

    Raised instead of returning a possibly wrong answer; never means "infeasible".
    """


class SelfCheckError(GaspError, AssertionError):
    """A solver produced an answer that failed independent re-verification."""
