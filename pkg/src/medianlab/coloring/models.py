from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Mapping


@dataclass(frozen=True)
class Budget:
    """Search limits shared by the exact solvers. Node counts make runs reproducible;
    the wall-clock cap can only turn an exact answer into bounds."""

    max_nodes: int = 2_000_000
    max_seconds: float = 1800.0


@dataclass(frozen=True)
class CliqueResult:
    vertices: tuple[int, ...]
    exact: bool
    nodes: int = 0

    @property
    def size(self) -> int:
        return len(self.vertices)


@dataclass(frozen=True)
class ColoringResult:
    colors: Mapping[int, int]
    count: int
    optimal: bool
    lower_bound: int
    clique: tuple[int, ...] = ()
    nodes: int = 0

    @property
    def upper_bound(self) -> int:
        return self.count

    def to_payload(self) -> dict[str, object]:
        return {
            "chi": self.count if self.optimal else None,
            "lower": self.lower_bound,
            "upper": self.count,
            "optimal": self.optimal,
            "clique": list(self.clique),
        }


class BudgetExhausted(Exception):
    pass


@dataclass
class BudgetMeter:
    budget: Budget
    nodes: int = 0
    started: float = field(default_factory=time.monotonic)

    def tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.budget.max_nodes:
            raise BudgetExhausted
        # The clock is polled sparsely; node counts stay the deterministic limit.
        if self.nodes & 0x3FF == 0 and time.monotonic() - self.started > self.budget.max_seconds:
            raise BudgetExhausted
