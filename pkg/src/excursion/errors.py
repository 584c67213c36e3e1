"""Exception taxonomy shared across the library.

Two failure classes matter to callers: rejected inputs (ValidationError
and subclasses) and numerical aborts while factorizing covariance
matrices (FactorizationError).  The command-line layer maps the former
to exit code 1 and the latter to exit code 2.
"""

from __future__ import annotations

__all__ = [
    "ExcursionError",
    "ValidationError",
    "ConfigError",
    "ManifoldMismatchError",
    "DegenerateChartError",
    "DegenerateModelError",
    "UnsupportedShapeError",
    "FactorizationError",
]


class ExcursionError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(ExcursionError, ValueError):
    """An input violates a documented precondition."""


class ConfigError(ValidationError):
    """A run configuration is invalid; carries the offending field path."""

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")


class ManifoldMismatchError(ValidationError):
    """Points, models, or domains belong to different manifolds or charts."""


class DegenerateChartError(ValidationError):
    """The chart metric is singular at the requested point (e.g. a pole)."""


class DegenerateModelError(ValidationError):
    """The model carries no usable field (constant field, kappa <= 0)."""


class UnsupportedShapeError(ValidationError):
    """The requested shape is outside the closed-form catalogue."""


class FactorizationError(ExcursionError, RuntimeError):
    """Covariance factorization failed after exhausting the jitter ladder."""
