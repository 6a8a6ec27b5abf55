"""Exception hierarchy. Each family maps to one CLI exit code."""


class AffsemiError(Exception):
    exit_code = 5


class MalformedInput(AffsemiError, ValueError):
    exit_code = 2


class ZeroGenerator(MalformedInput):
    pass


class DuplicateGenerator(MalformedInput):
    pass


class NonMinimalGenerator(MalformedInput):
    pass


class LengthMismatch(MalformedInput):
    pass


class NotInSemigroup(MalformedInput):
    pass


class NotNumerical(MalformedInput):
    pass


class GcdViolation(MalformedInput):
    pass


class OrderViolation(MalformedInput):
    pass


class NotNice(MalformedInput):
    pass


class NotInSpan(MalformedInput):
    pass


class NonHomogeneousInput(MalformedInput):
    pass


class PreconditionViolated(MalformedInput):
    pass


class NotSimplicial(AffsemiError):
    exit_code = 3


class ResourceBound(AffsemiError):
    exit_code = 4


class InvariantViolation(AffsemiError, AssertionError):
    """Raised when an internal consistency check fails. Always a bug."""

    exit_code = 5
