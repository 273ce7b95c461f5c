"""Exception hierarchy shared by every engine."""


class StructConstError(Exception):
    """Base class for errors raised by this package."""


class DatumMismatchError(StructConstError, TypeError):
    """Two vectors from different root data were combined."""


class PreconditionError(StructConstError, ValueError):
    """An input violated a documented precondition (e.g. a non-dominant weight)."""


class CapabilityError(StructConstError):
    """The request is well posed but beyond the enumeration budget for this type."""


class InconsistencyError(StructConstError, ArithmeticError):
    """An internal cross-check failed, e.g. a division that should be exact was not."""


class PrecisionError(StructConstError, ArithmeticError):
    """A truncated power-series computation ran out of t-adic precision."""


class ParityError(StructConstError, ValueError):
    """Side lengths of a tree polygon have odd total."""


class TriangleInequalityError(StructConstError, ValueError):
    """Some side is longer than the sum of all the others."""


class DecompositionError(StructConstError, ValueError):
    """A weight does not decompose in the requested shape."""
