"""Exception hierarchy shared by every module."""


class OperadError(ValueError):
    """Base class for validation failures (CLI exit code 2)."""

    code = "invalid"


class IndexOutOfRange(OperadError):
    code = "index-out-of-range"


class ShapeMismatch(OperadError):
    code = "shape-mismatch"


class ColourMismatch(OperadError):
    code = "colour-mismatch"


class InvariantViolation(OperadError):
    code = "invariant-violation"


class NotRelated(OperadError):
    code = "not-related"


class CapExceeded(OperadError):
    """An enumeration would exceed its configured size cap (CLI exit code 3)."""

    code = "cap-exceeded"

    def __init__(self, message: str, cap: int):
        super().__init__(message)
        self.cap = cap


class AdmissibilityViolation(AssertionError):
    """Composition of admissible operations produced an inadmissible one.

    Raised as an internal assertion: it signals a bug, not bad input.
    """
