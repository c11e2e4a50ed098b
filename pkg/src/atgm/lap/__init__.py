"""
Linear assignment solvers
"""

from .brute_force import brute_force_lap
from .hungarian import check_cost_matrix, hungarian, solve_lap

__all__ = [
    "brute_force_lap",
    "check_cost_matrix",
    "hungarian",
    "solve_lap",
]
