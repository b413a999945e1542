"""
Error Types
Exception hierarchy shared by the numerical modules and the CLI.
"""
from typing import Optional


class LosMimoError(Exception):
    """Base class for all toolkit errors."""


class ContractViolation(LosMimoError, ValueError):
    """A precondition of an operation was not met."""


class InvalidMediumError(LosMimoError, ValueError):
    """Medium parameters outside their physical domain."""


class InfeasibleDesignError(LosMimoError, ValueError):
    """A design target or search interval has no feasible solution."""


class EigensolverError(LosMimoError, ArithmeticError):
    """The Hermitian eigensolver rejected its input or failed to converge."""


class ConfigError(LosMimoError, ValueError):
    """Scenario configuration could not be parsed or validated."""

    def __init__(self, message: str, key: Optional[str] = None, line: Optional[int] = None):
        self.key = key
        self.line = line
        location = []
        if line is not None:
            location.append(f"line {line}" if line > 0 else "override")
        if key is not None:
            location.append(f"key '{key}'")
        prefix = f"{', '.join(location)}: " if location else ""
        super().__init__(f"{prefix}{message}")
