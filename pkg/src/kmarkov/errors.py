"""Exception types raised across the package."""


class KMarkovError(Exception):
    pass


class InvalidInputError(KMarkovError, ValueError):
    pass


class NormalFormError(KMarkovError, ValueError):
    """The resolution index points at an Up relation; reverse the word first."""


class OracleCapacityError(KMarkovError):
    pass


class UnboundedEnumerationError(KMarkovError):
    pass


class ConsistencyError(KMarkovError, AssertionError):
    """An internal invariant failed. Never expected to fire."""
