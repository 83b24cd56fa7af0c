"""Exception and warning types shared across the package."""


class SemigroupError(Exception):
    """Base class for every error raised by this package."""


class PositivityError(SemigroupError):
    """No strictly positive grading exists for the given generators.

    ``certificate`` holds nonnegative integer multipliers (one per generator)
    whose combination has zero free part, when one was found.
    """

    def __init__(self, message, certificate=None):
        super().__init__(message)
        self.certificate = certificate


class BudgetError(SemigroupError):
    """An enumeration or memo table grew past its configured cap."""


class MembershipError(SemigroupError):
    """An element expected to lie in the semigroup does not."""


class ExpansionError(SemigroupError):
    """A denominator factor 1 - t^e cannot be inverted (lambda(e) <= 0)."""


class InvalidComplexError(SemigroupError):
    pass


class EmptySupportError(SemigroupError):
    """The Alexander dual is undefined for a complex with empty support."""


class HypothesisError(SemigroupError):
    """A structural precondition (e.g. E generates S) does not hold."""


class ConsistencyError(SemigroupError):
    """Two computations that must agree did not.

    ``exponent`` is the first disagreeing exponent (or ``None``) and
    ``saturated`` tells whether the data was believed complete, which
    separates a bug from an insufficient bound.
    """

    def __init__(self, message, exponent=None, saturated=None):
        super().__init__(message)
        self.exponent = exponent
        self.saturated = saturated


class SaturationWarning(UserWarning):
    """Data near the truncation bound may be incomplete."""
