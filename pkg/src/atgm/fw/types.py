"""
FW Module: solver configuration and iteration traces
"""

from dataclasses import dataclass, field, replace
from typing import List, Optional

import numpy as np

from ..utils.types import IntArray, LapBackend
from .constants import (
    ARMIJO_C,
    ARMIJO_SHRINK,
    CONVEX_GAP_TOLERANCE,
    CONVEX_MAX_ITERATIONS,
    NONCONVEX_MAX_ITERATIONS,
    NONCONVEX_RELATIVE_TOLERANCE,
    ROUNDOFF_TOLERANCE,
)


@dataclass(frozen=True)
class FwConfig:
    """
    Frank-Wolfe settings. `rel_tol` is only used by nonconvex solves and `gap_tol`, an absolute bound on the duality
    gap, only by convex solves. `check_iterates` validates every iterate as a soft assignment.
    """

    max_iters: int = NONCONVEX_MAX_ITERATIONS
    rel_tol: float = NONCONVEX_RELATIVE_TOLERANCE
    armijo_c: float = ARMIJO_C
    armijo_shrink: float = ARMIJO_SHRINK
    gap_tol: float = CONVEX_GAP_TOLERANCE
    lap_backend: LapBackend = "hungarian"
    check_iterates: bool = False

    def __post_init__(self) -> None:
        if self.max_iters < 1:
            raise ValueError("max_iters must be positive")
        if self.rel_tol <= 0.0:
            raise ValueError("rel_tol must be positive")
        if self.gap_tol <= 0.0:
            raise ValueError("gap_tol must be positive")
        if not 0.0 < self.armijo_c < 1.0:
            raise ValueError("armijo_c must lie in (0, 1)")
        if not 0.0 < self.armijo_shrink < 1.0:
            raise ValueError("armijo_shrink must lie in (0, 1)")
        if self.lap_backend not in ("hungarian", "scipy"):
            raise ValueError(f"unknown assignment backend '{self.lap_backend}'")

    @classmethod
    def nonconvex(cls, **overrides: object) -> "FwConfig":
        """
        Settings for edge discrepancy solves: 200 iterations, relative decrease tolerance 1e-9.
        """
        return replace(cls(max_iters=NONCONVEX_MAX_ITERATIONS, rel_tol=NONCONVEX_RELATIVE_TOLERANCE), **overrides)

    @classmethod
    def convex(cls, **overrides: object) -> "FwConfig":
        """
        Settings for node shifting solves: 100 iterations, duality gap below 1e-7.
        """
        return replace(cls(max_iters=CONVEX_MAX_ITERATIONS, gap_tol=CONVEX_GAP_TOLERANCE), **overrides)


@dataclass(frozen=True, eq=False)
class FwRecord:
    """
    One Frank-Wolfe iteration: objective value after the step, step size, duality gap before the step and the
    linear assignment solution (target index per source node).
    """

    iteration: int
    value: float
    step: float
    gap: float
    vertex: IntArray


@dataclass
class FwTrace:
    """
    History of one Frank-Wolfe solve.
    """

    initial_value: float
    records: List[FwRecord] = field(default_factory=list)
    stop_reason: str = ""
    final_gap: Optional[float] = None

    def halt(self, iteration: int, gap: float, vertex: IntArray, reason: str) -> None:
        """
        Record an iteration that keeps the current iterate and end the solve with `reason`.
        """
        self.records.append(FwRecord(iteration, self.final_value, 0.0, gap, vertex))
        self.stop_reason = reason

    @property
    def iterations(self) -> int:
        """Number of iterations performed."""
        return len(self.records)

    @property
    def values(self) -> List[float]:
        """Objective values, starting with the value at the initial iterate."""
        return [self.initial_value] + [record.value for record in self.records]

    @property
    def steps(self) -> List[float]:
        """Step sizes per iteration."""
        return [record.step for record in self.records]

    @property
    def gaps(self) -> List[float]:
        """Duality gaps per iteration."""
        return [record.gap for record in self.records]

    @property
    def vertices(self) -> List[IntArray]:
        """Linear assignment solutions per iteration."""
        return [record.vertex for record in self.records]

    @property
    def final_value(self) -> float:
        """Objective value at the returned iterate."""
        return self.values[-1]

    def is_monotone(self) -> bool:
        """
        Whether the recorded objective values never increase beyond round-off.
        """
        values = np.asarray(self.values)
        return bool(np.all(np.diff(values) <= ROUNDOFF_TOLERANCE * (1.0 + np.abs(values[:-1]))))

    def summary(self) -> dict[str, object]:
        """
        Plain summary for diagnostics output.
        """
        return {
            "iterations": self.iterations,
            "initial_value": self.initial_value,
            "final_value": self.final_value,
            "final_gap": self.final_gap,
            "stop_reason": self.stop_reason,
        }
