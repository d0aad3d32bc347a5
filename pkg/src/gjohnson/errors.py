"""Exception types shared across the package."""
from __future__ import annotations


class ParameterError(ValueError):
    """Invalid argument: bad graph parameters, out-of-range index, malformed spec."""


class BudgetExceededError(RuntimeError):
    """An exhaustive routine hit its node-expansion budget before finishing.

    Carries the number of expansions performed so callers can report partial
    progress instead of silently running unbounded.
    """

    def __init__(self, message: str, expansions: int):
        super().__init__(f"{message} (expansions performed: {expansions})")
        self.expansions = expansions


class EnumerationCapError(RuntimeError):
    """A result-size cap was exceeded (e.g. more cycles than the caller allowed)."""


class ConsistencyError(RuntimeError):
    """Two routes to the same quantity disagreed; signals an implementation bug."""
