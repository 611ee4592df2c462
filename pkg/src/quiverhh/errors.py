"""Exception types shared across the package."""


class QuiverHHError(Exception):
    pass


class PresentationError(QuiverHHError):
    """Malformed or invalid algebra presentation.

    ``position`` is a ``(line, column)`` pair when the failure can be located
    in the source text.
    """

    def __init__(self, message, position=None):
        if position is not None:
            message = "%s (line %d, column %d)" % (message, position[0], position[1])
        super().__init__(message)
        self.position = position


class ResourceCapExceeded(QuiverHHError):
    def __init__(self, message, n=None, m=None):
        super().__init__(message)
        self.n = n
        self.m = m


class ComplexError(QuiverHHError):
    """A supposed chain complex fails d^2 = 0."""


class ArithmeticInvariantError(QuiverHHError):
    """An exact-arithmetic invariant that must hold was violated (a bug signal)."""


class VerificationMismatch(QuiverHHError):
    """Two independent computations of the same quantity disagree."""
