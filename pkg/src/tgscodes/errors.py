class TgsError(Exception):
    """Base class for every error raised by this package."""

    kind = "error"


class MalformedInput(TgsError):
    kind = "malformed-input"


class UsageError(TgsError):
    kind = "usage"


class BoundExceeded(TgsError):
    kind = "bound-exceeded"


class InvalidStructure(TgsError):
    """Raised when an operation needs a structure that passes every axiom."""

    kind = "invalid-structure"
