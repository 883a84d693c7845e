"""Exception hierarchy shared by every module."""


class BatchCodeError(Exception):
    """Base class for all errors raised by this package."""


class InvalidParams(BatchCodeError, ValueError):
    pass


class DimensionTooLarge(BatchCodeError, ValueError):
    pass


class RankDeficient(BatchCodeError, ValueError):
    pass


class MatrixFormatError(BatchCodeError, ValueError):
    """Malformed matrix text."""


class ConstructionInfeasible(BatchCodeError, RuntimeError):
    """A constructor's search exhausted without producing a matrix."""


class NoConstructionKnown(BatchCodeError, ValueError):
    pass


class SearchBudgetExceeded(BatchCodeError, RuntimeError):
    """The recovery-set search ran out of budget; the answer is unknown.

    ``query`` carries the offending query (0-based indices) when known.
    """

    def __init__(self, message: str, query=None):
        super().__init__(message)
        self.query = query


class NotCovered(BatchCodeError, ValueError):
    pass


class ConditionViolated(BatchCodeError, ValueError):
    pass


class DomainError(BatchCodeError, ValueError):
    pass
