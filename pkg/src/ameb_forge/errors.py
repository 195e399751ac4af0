"""Exception hierarchy shared by every module of the package."""


class AmebError(Exception):
    """Base class for all package errors."""


# finite fields
class NotPrime(AmebError, ValueError):
    pass


class NotPrimePower(AmebError, ValueError):
    pass


class OrderTooLarge(AmebError, ValueError):
    pass


class ZeroInverse(AmebError, ZeroDivisionError):
    pass


class FieldMismatch(AmebError, TypeError):
    pass


# latin squares
class ShapeError(AmebError, ValueError):
    pass


class OrderMismatch(AmebError, ValueError):
    pass


class ShiftOutOfRange(AmebError, ValueError):
    pass


class NotLatin(AmebError, ValueError):
    pass


class NotAResolution(AmebError, ValueError):
    pass


class UnsupportedOrder(AmebError, ValueError):
    """Raised for orders 2 and 6, where no pair of orthogonal squares exists."""


class ResolutionNotFound(AmebError):
    """A transversal resolution search ended without producing a resolution."""

    def __init__(self, message, nodes=0):
        super().__init__(message)
        self.nodes = nodes


class BudgetExhausted(ResolutionNotFound):
    """The search hit its node budget before deciding."""


class NonexistentResolution(ResolutionNotFound):
    """The search space was exhausted: no resolution exists."""


# bases and verification
class DimensionMismatch(AmebError, ValueError):
    pass


# both names appear in the public contract
DimsMismatch = DimensionMismatch


class FlatnessViolation(AmebError, ValueError):
    pass


class NotNormalized(AmebError, ValueError):
    pass


# catalog
class UnknownDatum(AmebError, KeyError):
    pass


class CountUnreachable(AmebError, ValueError):
    pass
