"""Exception types shared across the package."""

from __future__ import annotations


class UsageError(ValueError):
    """A caller violated an operation's precondition."""


class CapExceeded(UsageError):
    """An enumeration would exceed its configured size cap."""

    def __init__(self, estimate: int, cap: int) -> None:
        super().__init__(f"enumeration of {estimate} items exceeds cap {cap}")
        self.estimate = estimate
        self.cap = cap


class UniverseOverflow(OverflowError):
    """A view image left the configured integer universe."""


class ContractViolation(RuntimeError):
    """A propagator or view broke its declared contract."""


class ModelError(ValueError):
    """A model file could not be parsed."""

    def __init__(self, message: str, line: int | None = None) -> None:
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)
        self.line = line
