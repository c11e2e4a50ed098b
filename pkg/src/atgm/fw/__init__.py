"""
Frank-Wolfe minimization over the doubly-stochastic relaxation
"""

from .active_set import ActiveSet
from .line_search import (
    backtracking_step,
    exact_quadratic_step,
    line_search_backtracking,
    line_search_exact_quadratic,
    quadratic_step,
)
from .solver import linearized_step, linearized_vertex, minimize
from .types import FwConfig, FwRecord, FwTrace

__all__ = [
    "ActiveSet",
    "FwConfig",
    "FwRecord",
    "FwTrace",
    "backtracking_step",
    "exact_quadratic_step",
    "line_search_backtracking",
    "line_search_exact_quadratic",
    "linearized_step",
    "linearized_vertex",
    "minimize",
    "quadratic_step",
]
