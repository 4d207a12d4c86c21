"""Exception hierarchy shared by every module.

The CLI maps :class:`CapacityError` to exit code 3 and every other error
defined here to exit code 2.
"""

from __future__ import annotations

import os


class MultcheckError(Exception):
    pass


class InputError(MultcheckError, ValueError):
    """Malformed user input: bad file syntax, mismatched rings, bad flags."""


class ParseError(InputError):
    def __init__(self, message: str, path: str = "<input>", line: int = 0, column: int = 0):
        self.path = path
        self.line = line
        self.column = column
        super().__init__(f"{path}:{line}:{column}: {message}")


class DomainError(MultcheckError, ValueError):
    """An operation was applied outside its mathematical domain."""


class PreconditionError(DomainError):
    pass


class InconsistencyError(MultcheckError, ValueError):
    """Data that cannot come from a genuine resolution / Hilbert series."""


class CapacityError(MultcheckError):
    """A size guard was exceeded."""


def guard_scale() -> int:
    """Multiplier applied to every capacity guard (env ``MULTCHECK_GUARD``)."""
    raw = os.environ.get("MULTCHECK_GUARD", "1")
    try:
        value = int(raw)
    except ValueError:
        raise InputError(f"MULTCHECK_GUARD must be a positive integer, got {raw!r}")
    if value < 1:
        raise InputError(f"MULTCHECK_GUARD must be a positive integer, got {raw!r}")
    return value
