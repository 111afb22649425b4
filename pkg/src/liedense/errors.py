"""Exception hierarchy shared by all pipelines.

The CLI maps :class:`ValidationError` (and subclasses) to exit code 2 and
:class:`ResourceError` to exit code 3.
"""

from __future__ import annotations


class LiedenseError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(LiedenseError, ValueError):
    """Input violates a documented precondition."""


class DomainError(ValidationError):
    """Argument lies outside the mathematical domain of an operation."""


class UsageError(ValidationError):
    """Operation called with mutually incompatible arguments."""


class ParseError(ValidationError):
    """Malformed expression text; ``offset`` is the byte position of the fault."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset


class ResourceError(LiedenseError):
    """A computation would exceed the configured resource guard."""


class InvariantError(LiedenseError, AssertionError):
    """An internal invariant (e.g. integrality of a dimension) failed."""
