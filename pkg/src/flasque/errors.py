"""Exception types shared across modules.

Two families matter to callers: usage errors (bad input, exit code 1 in the
CLI) and property violations (a machine check failed, exit code 2).
"""


class FlasqueError(Exception):
    pass


class UsageError(FlasqueError):
    pass


class PropertyViolation(FlasqueError):
    pass


class InvalidParameters(UsageError):
    pass


class UnsupportedFamily(UsageError):
    pass


class NotEpsilonGroup(UsageError):
    pass


class GroupMismatch(UsageError):
    pass


class BadPolynomial(UsageError):
    pass


class BadDivisor(UsageError):
    pass


class ZeroClass(UsageError):
    pass


class NotStable(PropertyViolation):
    pass


class DualityMismatch(PropertyViolation):
    pass


class CoflasqueCheckFailed(PropertyViolation):
    pass


class FlabbyCheckFailed(PropertyViolation):
    pass


class NonDecreasingMeasure(PropertyViolation):
    pass


class NonIntegralResult(PropertyViolation):
    pass


class ExactnessFailure(PropertyViolation):
    def __init__(self, message, k=None):
        super().__init__(message if k is None else f"k={k}: {message}")
        self.k = k


class IsoFailure(PropertyViolation):
    def __init__(self, message, k=None):
        super().__init__(message if k is None else f"k={k}: {message}")
        self.k = k


class GeneratorRelationFailure(PropertyViolation):
    pass


class IdempotentFailure(PropertyViolation):
    pass


class InconsistentInvariants(PropertyViolation):
    pass


class NonvanishingH0(PropertyViolation):
    def __init__(self, message, subgroups=()):
        super().__init__(message)
        self.subgroups = tuple(subgroups)
