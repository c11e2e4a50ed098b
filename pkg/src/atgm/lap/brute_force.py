"""
LAP Module: exhaustive assignment search for small instances
"""

from itertools import permutations
from typing import Union

import numpy as np

from ..core.assignment import Matching
from ..core.exceptions import CapacityException
from ..utils.types import FloatArray
from .constants import BRUTE_FORCE_MAX_TARGETS
from .hungarian import check_cost_matrix


def brute_force_lap(costs: Union[FloatArray, list[list[float]]]) -> Matching:
    """
    Minimum cost assignment by enumerating every injective map. Among equally good assignments the
    lexicographically smallest one is returned.
    """
    matrix = check_cost_matrix(costs)
    m, n = matrix.shape
    if n > BRUTE_FORCE_MAX_TARGETS:
        raise CapacityException(f"brute force assignment is limited to n <= {BRUTE_FORCE_MAX_TARGETS}, got {n}")
    candidates = np.array(list(permutations(range(n), m)), dtype=np.intp)
    totals = matrix[np.arange(m), candidates].sum(axis=1)
    return Matching(candidates[int(np.argmin(totals))], n)
