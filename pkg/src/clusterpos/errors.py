"""Exception hierarchy shared by every module of the package."""


class ClusterPosError(Exception):
    """Base class for all package errors."""


class UnsupportedType(ClusterPosError, ValueError):
    pass


class IndexOutOfRange(ClusterPosError, IndexError):
    pass


class NotReduced(ClusterPosError, ValueError):
    pass


class NotAdapted(ClusterPosError, ValueError):
    pass


class VariableSetMismatch(ClusterPosError, ValueError):
    pass


class InexactDivision(ClusterPosError, ArithmeticError):
    """Raised when a polynomial is not divisible by another.

    The ``remainder`` attribute holds the part of the dividend that could
    not be cancelled, as a witness.
    """

    def __init__(self, message, remainder=None):
        super().__init__(message)
        self.remainder = remainder


class DivisionByZeroPoly(ClusterPosError, ZeroDivisionError):
    pass


class NotSquare(ClusterPosError, ValueError):
    pass


class LengthMismatch(ClusterPosError, ValueError):
    pass


class NotUnitriangular(ClusterPosError, ValueError):
    pass


class FrozenVertex(ClusterPosError, ValueError):
    pass


class UnknownVertex(ClusterPosError, KeyError):
    pass


class SingularEvaluation(ClusterPosError, ZeroDivisionError):
    pass


class TooLarge(ClusterPosError, RuntimeError):
    pass
