"""Exception hierarchy shared by every ramdyn module."""


class RamdynError(Exception):
    """Base class for all library errors."""


class DivisionByZero(RamdynError, ZeroDivisionError):
    pass


class PrecisionExhausted(RamdynError):
    """A result cannot be certified within the available t- or zeta-precision.

    The message carries a retry hint (raise ``tprec`` or ``zprec``).
    """


class NotIntegral(RamdynError):
    def __init__(self, message, degree=None):
        super().__init__(message)
        self.degree = degree


class RingMismatch(RamdynError):
    pass


class OrderMismatch(RamdynError):
    pass


class ResourceLimit(RamdynError):
    pass


class UnsupportedPrime(RamdynError):
    pass


class LambdaZero(RamdynError):
    """lambda(f) vanishes, so the periodic-point bound degenerates."""


class NegativeValuation(RamdynError):
    pass


class HigherOrderPole(RamdynError):
    pass


class DegreeOverflow(RamdynError):
    pass


class ParseError(RamdynError):
    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class InternalInconsistency(RamdynError, AssertionError):
    """An invariant that a theorem guarantees was violated: a bug, never a math result."""
