"""Exception hierarchy shared by every module."""


class NagataError(Exception):
    """Base class for all library errors."""


class DimensionMismatchError(NagataError, ValueError):
    """Two classes live on blow-ups with different numbers of points."""


class ParseError(NagataError, ValueError):
    def __init__(self, message: str, text: str = "", position: int = 0):
        super().__init__(f"{message} at position {position}: {text!r}")
        self.text = text
        self.position = position


class ValidationError(NagataError):
    """A certificate or witness failed one of its checks."""


class InstabilityError(NagataError):
    """The randomized rank oracle did not settle within its retry budget."""


class InternalError(NagataError):
    """Two independently proven computations disagreed (a bug)."""
