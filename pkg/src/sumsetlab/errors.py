"""Exception hierarchy shared across the package."""


class SumsetLabError(Exception):
    """Base class for all package-specific errors."""


class InputFormatError(SumsetLabError):
    """A set-description file or JSON document is malformed."""


class PreconditionError(SumsetLabError, ValueError):
    """An operation was called with arguments outside its contract."""


class DegenerateInputError(PreconditionError):
    """A full-dimensional body was required but a degenerate one was given."""


class DimensionCapError(SumsetLabError):
    """The exact kernel does not support this dimension; use grid/MC paths."""


class ResolutionMismatchError(PreconditionError):
    """Grid operands have incompatible cell size or origins."""


class PrecisionError(SumsetLabError):
    """Requested precision could not be certified."""
