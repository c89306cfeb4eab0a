"""Exception types shared across the package."""


class DiamBoundError(Exception):
    """Base class for all errors raised by diambound."""


class InvalidParams(DiamBoundError, ValueError):
    """(alpha, beta) outside S = {alpha > 0, beta >= 0}."""


class OutOfRange(DiamBoundError, IndexError):
    """A rolling table was asked for an entry it does not hold."""


class Undecidable(DiamBoundError):
    """A comparison could not be certified at the maximum working precision."""

    def __init__(self, message, *, V=None, m=None, q=None, precision=None):
        super().__init__(message)
        self.V = V
        self.m = m
        self.q = q
        self.precision = precision


class BudgetExceeded(DiamBoundError):
    """The scan needed more table memory than the configured budget allows."""

    def __init__(self, message, *, d=None, n=None, needed_bytes=None, budget=None):
        super().__init__(message)
        self.d = d
        self.n = n
        self.needed_bytes = needed_bytes
        self.budget = budget


class Exhausted(DiamBoundError):
    """No l in the requested range produced a successful run."""

    def __init__(self, message, attempts=()):
        super().__init__(message)
        self.attempts = list(attempts)


class NotFound(DiamBoundError):
    """The falsifier ran out of budget without finding a violating pair."""
