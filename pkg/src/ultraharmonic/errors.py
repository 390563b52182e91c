"""Exception types shared across the package."""


class UltraharmonicError(Exception):
    """Base class for all package-specific errors."""


class ParseError(UltraharmonicError):
    """Raised when an expression string cannot be parsed.

    Carries the character offset of the failure so callers can point
    at the offending position.
    """

    def __init__(self, message: str, position: int):
        super().__init__(f"syntax error at position {position}: {message}")
        self.message = message
        self.position = position


class InputError(UltraharmonicError):
    """Raised when external input (set files, coloring files) is malformed."""


class ConfigError(UltraharmonicError):
    """Raised for bad configuration values or out-of-budget requests."""


class InsufficientDataError(UltraharmonicError):
    """Raised when an enumeration horizon yields too few elements.

    ``progress`` holds whatever partial result was assembled before
    the horizon ran out, so callers can report it.
    """

    def __init__(self, message: str, progress=None):
        super().__init__(message)
        self.progress = progress


class FIPError(UltraharmonicError):
    """Raised when a filter base contains a provably empty intersection."""


class SchemaError(UltraharmonicError):
    """Raised when a report file is corrupt or has an unknown schema tag."""
