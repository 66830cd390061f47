"""
Exception types shared by the physics layer, the simulator and the CLI.

The CLI maps them onto exit codes: ValidationError -> 2,
InfeasiblePointError -> 3, NumericalError -> 4.
"""
from typing import Optional


class ValveError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(ValveError, ValueError):
    """A parameter or input is outside its documented domain."""


class PoleError(ValidationError):
    """Evaluation requested exactly at a pole of the X/Y intermediates."""

    def __init__(self, pole: str, mu: float, message: Optional[str] = None):
        self.pole = pole
        self.mu = mu
        super().__init__(message or f"mu={mu:.12g} sits on the {pole} pole of X/Y")


class InfeasiblePointError(ValveError):
    """Requested operating point does not lie inside the band [-2, 2]."""


class NumericalError(ValveError):
    """A solve or an integration could not be carried out reliably."""

    def __init__(self, message: str, condition: Optional[float] = None):
        self.condition = condition
        if condition is not None:
            message = f"{message} (condition estimate {condition:.3e})"
        super().__init__(message)


class EdgeContactError(NumericalError):
    """Wave amplitude reached the hard-wall edge of the simulation window."""
