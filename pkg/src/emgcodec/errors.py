"""Exception hierarchy shared by all modules."""


class EmgCodecError(Exception):
    """Base class for every error raised by this package."""


class DomainError(EmgCodecError, ValueError):
    """A numeric input lies outside a function's domain (e.g. NaN)."""


class ShapeError(EmgCodecError, ValueError):
    """Operands have incompatible lengths or shapes."""


class FormatError(EmgCodecError):
    """A byte stream has the wrong magic string or version."""


class LengthError(EmgCodecError):
    """A byte stream is truncated, oversized or describes an empty volume."""


class DataError(EmgCodecError):
    """Decoded values violate an invariant.

    ``index`` is the flat index of the first offending value, when known.
    """

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class DegenerateWindowError(EmgCodecError, ValueError):
    """Every pixel of a window is identically zero."""
