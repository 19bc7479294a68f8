"""Shared exception types."""


class MonocloneError(ValueError):
    """Base class for domain errors raised by this package."""


class ParseError(MonocloneError):
    """Raised when a monomial expression cannot be parsed."""

    def __init__(self, message: str, position: int, expected: str | None = None):
        detail = f"{message} at position {position}"
        if expected:
            detail += f" (expected {expected})"
        super().__init__(detail)
        self.position = position
        self.expected = expected


class CapError(MonocloneError):
    """An object does not fit the configured closure cap, or the capped
    universe needed for a computation is too large to materialize."""
