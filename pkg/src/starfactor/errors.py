"""Exception hierarchy shared by the library and the CLI exit-code mapping."""

from __future__ import annotations


class StarFactorError(Exception):
    """Base class for all errors raised by this package."""


class GraphFormatError(StarFactorError, ValueError):
    """Input text could not be parsed as a graph.

    ``offset`` is the byte (graph6) or line (edge list) position of the
    problem when one can be pinned down.
    """

    def __init__(self, message: str, offset: int | None = None):
        if offset is not None:
            message = f"{message} (at offset {offset})"
        super().__init__(message)
        self.offset = offset


class BoundExceededError(StarFactorError):
    """An exhaustive routine was asked to run beyond its configured size bound."""


class InvariantViolation(StarFactorError, AssertionError):
    """A computed object failed one of its structural self-checks.

    Since every such invariant is a theorem, raising this means a bug.
    """


class NoFactorError(StarFactorError):
    """The requested factor does not exist for the given graph."""
