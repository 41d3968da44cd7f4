"""Exception types shared across the package."""

from __future__ import annotations


class GcohomError(Exception):
    """Base class for all package errors."""


class ValidationError(GcohomError):
    """Malformed input: bad tables, wrong shapes, violated preconditions."""

    def __init__(self, message: str, violations: list | None = None):
        super().__init__(message)
        self.violations = violations or []


class ClassViolationError(ValidationError):
    """An operation would produce a result outside the active continuity class.

    Carries a witnessing pair of argument tuples that should have equal values
    but do not.
    """

    def __init__(self, message: str, witness: tuple | None = None):
        super().__init__(message)
        self.witness = witness


class ObstructionError(GcohomError):
    """Exactness failed: carries the cocycle that could not be lifted."""

    def __init__(self, message: str, obstruction=None, bidegree: tuple[int, int] | None = None):
        super().__init__(message)
        self.obstruction = obstruction
        self.bidegree = bidegree


class InternalCheckError(GcohomError):
    """An identity the implementation guarantees failed to re-verify."""
