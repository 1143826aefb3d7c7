"""
Exception hierarchy. Each error carries the CLI exit code it maps to.
"""

from config import EXIT_CAP, EXIT_INPUT, EXIT_INVARIANT


class SymbreakError(Exception):
    exit_code = EXIT_INVARIANT


class GraphInputError(SymbreakError, ValueError):
    """Malformed graph text, bad vertex ids, self-loops, unknown families."""

    exit_code = EXIT_INPUT


class ResourceCapError(SymbreakError):
    exit_code = EXIT_CAP


class UnsupportedSizeError(ResourceCapError):
    def __init__(self, what: str, size: int, cap: int) -> None:
        super().__init__(f"{what} {size} exceeds the configured cap {cap}")
        self.what = what
        self.size = size
        self.cap = cap


class TimeBudgetExceeded(ResourceCapError):
    def __init__(self, what: str, budget: float) -> None:
        super().__init__(f"{what} exceeded the time budget of {budget:g}s")
        self.budget = budget


class InapplicableError(SymbreakError):
    """A construction whose hypothesis does not hold for this input."""


class InvariantViolation(SymbreakError):
    """A bound, oracle or verifier disagreed. ``certificate`` holds both sides."""

    def __init__(self, message: str, certificate: dict | None = None) -> None:
        super().__init__(message)
        self.certificate = certificate or {}
