"""Exception hierarchy shared by all catmaj modules."""


class CatmajError(Exception):
    """Base class for every error raised by this package."""


class NegativeComponent(CatmajError, ValueError):
    pass


class EmptyVector(CatmajError, ValueError):
    pass


class DimensionMismatch(CatmajError, ValueError):
    pass


class InvalidInput(CatmajError, ValueError):
    pass


class BothEmptyAfterReduction(CatmajError):
    """Raised by ``reduce_pair`` when the two vectors are identical."""


class IndeterminateAtZero(CatmajError, ArithmeticError):
    """The normalized curve has no finite limit at r = 0 (a zero component is present)."""


class EndpointViolation(CatmajError):
    """The largest or smallest components already rule out catalysis.

    ``witness_r`` is ``+inf`` when x1 >= y1 and ``-inf`` when xd <= yd.
    """

    def __init__(self, message, witness_r):
        super().__init__(message)
        self.witness_r = witness_r


class InvalidParams(CatmajError, ValueError):
    pass


class BudgetExceeded(CatmajError):
    """The catalyst search ran out of budget; the decision itself is unaffected."""


class NotApplicable(CatmajError):
    """Certification was requested for a pair that is not decided Trumped."""
