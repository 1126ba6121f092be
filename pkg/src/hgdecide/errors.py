"""Exception hierarchy shared by all modules."""


class DecideError(Exception):
    """Base class for every error raised by this package."""


class FieldMismatchError(DecideError):
    """Arithmetic between elements of incompatible field contexts."""


class PrecisionExceeded(DecideError):
    """An interval refinement hit the configured precision cap.

    Raised as a resource error; callers must never turn this into a verdict.
    """


class IntervalStraddlesZero(DecideError):
    """A reciprocal was taken of an interval containing zero.

    Refinement loops treat this as "escalate precision", not as failure.
    """


class ScanCapExceeded(DecideError):
    """An exact term scan hit the configured index cap."""


class UnsupportedInstance(DecideError):
    """The instance falls outside the class a decider can handle.

    Carries enough context (``detail``) for the CLI to report why and, where
    relevant, evidence such as a maximal matching.
    """

    def __init__(self, message: str, detail: object = None):
        super().__init__(message)
        self.detail = detail


class ParseError(DecideError):
    """An instance or certificate document failed validation."""

    def __init__(self, message: str, location: str = ""):
        super().__init__(f"{location}: {message}" if location else message)
        self.location = location
