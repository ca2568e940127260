"""Exception hierarchy shared by all modules."""


class DomainError(ValueError):
    """Base class for every error raised by this package."""


class InconsistentError(DomainError):
    """A finite set that was required to be consistent has no upper bound."""

    def __init__(self, message, items=None, level=None):
        super().__init__(message)
        self.items = items
        self.level = level


class NotWayBelowError(DomainError):
    """A way-below precondition does not hold."""


class MonotonicityError(DomainError):
    """A sequence that must be increasing was observed decreasing."""

    def __init__(self, message, i=None, j=None):
        super().__init__(message)
        self.i = i
        self.j = j


class UnsupportedOperation(DomainError):
    """The base has no registered strategy for the requested operation."""


class BudgetExhausted(DomainError):
    """No level within the probe budget reached the requested precision."""


class CertificateError(DomainError):
    """A positivity or Markov certificate failed."""
