"""
Exception hierarchy and command-line exit codes.
"""

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_INPUT = 3
EXIT_SINGULAR = 4
EXIT_REPLAY_MISMATCH = 5


class PinsimError(Exception):
    """Base class for all pinsim errors."""

    exit_code = EXIT_FAILURE


class UsageError(PinsimError):
    """Invalid flag combination or parameter value."""

    exit_code = EXIT_USAGE


class ExpirationReachedError(PinsimError):
    """Evaluation requested at or beyond expiration (tau <= 0 or s >= 1)."""

    exit_code = EXIT_USAGE


class NoHedgingForceError(PinsimError):
    """Position or elasticity is zero where a hedging force is required."""

    exit_code = EXIT_USAGE


class SingularityError(PinsimError):
    """The hedging-feedback denominator vanished."""

    exit_code = EXIT_SINGULAR

    def __init__(self, message: str, s: float | None = None):
        super().__init__(message)
        self.s = s


class InputDataError(PinsimError):
    """Malformed or inconsistent input data."""

    exit_code = EXIT_INPUT

    def __init__(self, message: str, path: str | None = None, line: int | None = None):
        location = ""
        if path is not None:
            location = f"{path}:"
        if line is not None:
            location = f"{location}{line}:" if location else f"line {line}:"
        super().__init__(f"{location} {message}" if location else message)
        self.path = path
        self.line = line
