"""Enumeration budget shared by every exponential scan.

The default allows 2**20 enumerated words per operation; the FANKIT_BUDGET
environment variable overrides it.  Scans fail loudly instead of hanging.
"""

from __future__ import annotations

import os

from .errors import BudgetExceededError

DEFAULT_BUDGET = 1 << 20


def enumeration_budget() -> int:
    raw = os.environ.get("FANKIT_BUDGET")
    if raw is None:
        return DEFAULT_BUDGET
    try:
        value = int(raw)
    except ValueError as exc:
        raise BudgetExceededError(f"FANKIT_BUDGET is not an integer: {raw!r}") from exc
    if value <= 0:
        raise BudgetExceededError(f"FANKIT_BUDGET must be positive, got {value}")
    return value


def check_enumeration(count: int) -> None:
    """Fail if a scan of `count` words would exceed the budget."""
    budget = enumeration_budget()
    if count > budget:
        raise BudgetExceededError(f"scan of {count} words exceeds budget {budget}")


class ScanMeter:
    """Counts visited nodes in a pruned search against the budget."""

    __slots__ = ("visits", "limit")

    def __init__(self, limit: int | None = None):
        self.visits = 0
        self.limit = limit if limit is not None else enumeration_budget()

    def tick(self, n: int = 1) -> None:
        self.visits += n
        if self.visits > self.limit:
            raise BudgetExceededError(f"scan visited {self.visits} nodes, budget {self.limit}")
