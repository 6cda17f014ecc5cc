"""
Exception hierarchy shared by the arithmetic library and the CLI.
The CLI maps ConfigError to exit code 2 and InvariantViolation to exit code 4.
"""
from typing import Optional


class GcdLabError(Exception):
    """Base class for every error raised by gcdlab."""


class DomainError(GcdLabError, ValueError):
    """A mathematical precondition is violated (zero valuation, pole, common zero...)."""


class FactorizationBailout(DomainError):
    def __init__(self, message: str, cofactor: int):
        super().__init__(message)
        self.cofactor = cofactor


class NotSUnitError(DomainError):
    def __init__(self, message: str, prime: int):
        super().__init__(message)
        self.prime = prime


class ConfigError(GcdLabError, ValueError):
    """Invalid user configuration. The message names the offending field or position."""

    def __init__(self, message: str, field: Optional[str] = None):
        super().__init__(message)
        self.field = field


class ExprSyntaxError(ConfigError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset


class CommonFactorError(ConfigError):
    """Numerator and denominator of a rational function are not coprime."""


class InvariantViolation(GcdLabError, AssertionError):
    """An identity that must hold exactly has failed."""
