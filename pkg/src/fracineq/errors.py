"""Exception hierarchy shared by all fracineq modules."""

from __future__ import annotations


class FracineqError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(FracineqError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class IntegrandError(FracineqError):
    """An integrand (or grid function) produced a non-finite value."""


class AccuracyError(FracineqError):
    """The requested tolerance could not be reached within the budget.

    Carries the best value and error estimate obtained so far.
    """

    def __init__(self, message: str, best_estimate: float, error_estimate: float,
                 evaluations: int):
        super().__init__(message)
        self.best_estimate = best_estimate
        self.error_estimate = error_estimate
        self.evaluations = evaluations


class PreconditionError(FracineqError):
    """A bound evaluator's convexity/positivity hypothesis failed to certify."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class ConfigError(FracineqError, ValueError):
    """A sweep configuration is invalid; ``field`` names the offending entry."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field
