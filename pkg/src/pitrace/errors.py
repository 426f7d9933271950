"""Exception hierarchy and resource ceilings."""

import os


class PitraceError(Exception):
    """Base class for every error raised by this package."""


class DimensionError(PitraceError, ValueError):
    """Operands have incompatible sizes or generator counts."""


class ParseError(PitraceError, ValueError):
    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class PreconditionError(PitraceError, ValueError):
    """An input violates an operation's stated precondition."""


class ResourceError(PitraceError, RuntimeError):
    """A configured size ceiling would be exceeded."""


class InternalConsistencyError(PitraceError, RuntimeError):
    """Two routes that must agree mathematically disagreed."""


def _env_int(name, default):
    value = os.environ.get(name)
    return int(value) if value else default


# Ceilings are read on every call so tests and the CLI can adjust the environment.
def max_terms():
    return _env_int("PITRACE_MAX_TERMS", 10**7)


def max_substitutions():
    return _env_int("PITRACE_MAX_SUBSTITUTIONS", 10**8)
