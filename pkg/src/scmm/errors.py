"""Exception hierarchy shared by every module."""

from __future__ import annotations


class ScmmError(Exception):
    """Base class for all library errors."""


class AmbientMismatchError(ScmmError, ValueError):
    """Two values live in polynomial rings with different variable counts."""


class ZeroIdealError(ScmmError, ValueError):
    pass


class UnitIdealError(ScmmError, ValueError):
    pass


class NotSquareFreeError(ScmmError, ValueError):
    """Raised by square-free-only operations; carries the offending generator."""

    def __init__(self, message: str, generator: tuple[int, ...] | None = None):
        super().__init__(message)
        self.generator = generator


class NotMatroidalError(ScmmError, ValueError):
    pass


class ParseError(ScmmError, ValueError):
    pass


class OutOfRegimeError(ScmmError, ValueError):
    """Exhaustive enumeration was requested outside the supported (n, d) range."""


class BudgetExceededError(ScmmError, RuntimeError):
    """A combinatorial search or lattice grew beyond its configured budget."""


class InconsistencyError(ScmmError, AssertionError):
    """Two routes that must agree did not, or an impossible case was reached."""
