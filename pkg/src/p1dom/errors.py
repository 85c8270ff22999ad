"""Exception hierarchy shared by all p1dom modules."""


class P1DomError(Exception):
    """Base class for all errors raised by this package."""


class RingMismatchError(P1DomError, TypeError):
    """Two operands belong to different coefficient rings."""


class UnsupportedRingError(P1DomError, ValueError):
    """The requested operation is not defined over this coefficient ring."""


class NotAUnitError(P1DomError, ArithmeticError):
    """An element that must be invertible is not a unit of its ring."""


class ShapeError(P1DomError, ValueError):
    """Matrix or complex dimensions are inconsistent."""


class BaseRingViolationError(P1DomError, ValueError):
    """A matrix entry uses an exponent forbidden by its base ring."""


class BandViolationError(P1DomError, ValueError):
    """A differential maps a global-sections band outside the target band."""


class NonVanishingH1Error(P1DomError, ValueError):
    """A level of a sheaf complex has nontrivial first cohomology."""


class NotNovikovAcyclicError(P1DomError, ValueError):
    """The Novikov acyclicity hypothesis fails for the given complex."""


class StabilisationFailureError(P1DomError, RuntimeError):
    """Truncated power-series homology dimensions did not stabilise."""


class FormatError(P1DomError, ValueError):
    """A file or serialised object does not match the expected format.

    Carries a ``location`` string pointing at the offending field.
    """

    def __init__(self, message, location=""):
        self.location = location
        if location:
            message = f"{message} (at {location})"
        super().__init__(message)
