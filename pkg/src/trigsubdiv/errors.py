"""Exception hierarchy shared by all modules."""


class SubdivisionError(ValueError):
    """Base class for every error raised by :mod:`trigsubdiv`."""


class InvalidMesh(SubdivisionError):
    pass


class OutOfDomain(SubdivisionError):
    pass


class InvalidTension(SubdivisionError):
    pass


class MeshTooLarge(SubdivisionError):
    pass


class Unsupported(SubdivisionError):
    pass


class DegenerateMask(SubdivisionError):
    pass


class TooFewPoints(SubdivisionError):
    pass


class ArityMismatch(SubdivisionError):
    pass


class NotDivisible(SubdivisionError):
    """Raised when a symbol has no ``(1 + z)`` factor.

    The ``residual`` attribute holds the remainder left by synthetic division.
    """

    def __init__(self, message: str, residual: float):
        super().__init__(message)
        self.residual = residual


class InsufficientData(SubdivisionError):
    pass


class WindowTooSmall(SubdivisionError):
    pass
