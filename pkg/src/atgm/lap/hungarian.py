"""
LAP Module: Hungarian method for rectangular linear assignment problems
"""

from collections import deque
from typing import Dict, List, Tuple, Union

import numpy as np
from scipy.optimize import linear_sum_assignment

from ..core.assignment import Matching
from ..core.exceptions import NumericException, ShapeException
from ..utils.logging import get_logger
from ..utils.types import BoolArray, FloatArray, IntArray, LapBackend
from .constants import DUMMY_ROW_COST, TIGHT_TOLERANCE

_logger = get_logger(__name__)


def check_cost_matrix(costs: Union[FloatArray, list[list[float]]]) -> FloatArray:
    """
    Return `costs` as a float matrix after checking that it has at most as many rows as columns and finite entries.
    """
    matrix = np.asarray(costs, dtype=np.float64)
    if matrix.ndim != 2 or matrix.shape[0] < 1:
        raise ShapeException(f"a cost matrix needs a non-empty 2-d shape, got {matrix.shape}")
    if matrix.shape[0] > matrix.shape[1]:
        raise ShapeException(f"a cost matrix needs m <= n, got shape {matrix.shape}")
    if not np.all(np.isfinite(matrix)):
        raise NumericException("cost matrix contains non-finite entries")
    return matrix


def _potentials(costs: FloatArray) -> Tuple[IntArray, FloatArray, FloatArray]:
    """
    Minimum cost perfect assignment of a square cost matrix by the shortest augmenting path form of the Hungarian
    method, with the row and column potentials `u, v` certifying it: `costs - u[:, None] - v[None, :] >= 0`.
    """
    size = costs.shape[0]
    # index 0 is the virtual column/row of the augmenting path search
    row_potential = np.zeros(size + 1)
    column_potential = np.zeros(size + 1)
    column_owner = np.zeros(size + 1, dtype=np.intp)
    predecessor = np.zeros(size + 1, dtype=np.intp)

    for row in range(1, size + 1):
        column_owner[0] = row
        current = 0
        slack = np.full(size + 1, np.inf)
        used = np.zeros(size + 1, dtype=np.bool_)
        while True:
            used[current] = True
            owner = column_owner[current]
            free = ~used[1:]
            reduced = costs[owner - 1] - row_potential[owner] - column_potential[1:]
            improve = free & (reduced < slack[1:])
            slack[1:][improve] = reduced[improve]
            predecessor[1:][improve] = current
            candidates = np.where(free, slack[1:], np.inf)
            following = int(np.argmin(candidates)) + 1
            delta = candidates[following - 1]
            row_potential[column_owner[used]] += delta
            column_potential[used] -= delta
            slack[~used] -= delta
            current = following
            if column_owner[current] == 0:
                break
        while current != 0:
            previous = predecessor[current]
            column_owner[current] = column_owner[previous]
            current = previous

    assignment = np.empty(size, dtype=np.intp)
    assignment[column_owner[1:] - 1] = np.arange(size)
    return assignment, row_potential[1:], column_potential[1:]


def _alternating_path(
    tight: BoolArray, assignment: IntArray, owner: IntArray, row: int, column: int
) -> List[Tuple[int, int]]:
    """
    Reassignments that give `column` to `row` inside the tight subgraph without touching rows before `row`, or an
    empty list if there are none. The owner of `column` has to move on along an alternating path that ends in the
    column `row` gives up.
    """
    start = int(owner[column])
    if start < row:
        return []
    goal = int(assignment[row])
    blocked = np.zeros(tight.shape[1], dtype=np.bool_)
    blocked[assignment[:row]] = True
    blocked[column] = True
    came_from: Dict[int, Tuple[int, int]] = {}
    queue = deque([start])
    while queue:
        current = queue.popleft()
        for column_index in np.flatnonzero(tight[current] & ~blocked):
            following = int(column_index)
            blocked[following] = True
            if following == goal:
                moves = [(row, column), (current, goal)]
                while current != start:
                    previous, taken = came_from[current]
                    moves.append((previous, taken))
                    current = previous
                return moves
            successor = int(owner[following])
            came_from[successor] = (current, following)
            queue.append(successor)
    return []


def lexicographic_assignment(
    costs: FloatArray, assignment: IntArray, row_potential: FloatArray, column_potential: FloatArray, rows: int
) -> IntArray:
    """
    The lexicographically smallest optimal assignment of the first `rows` rows, given one optimal `assignment` and
    potentials certifying it. Optimal assignments are exactly the perfect matchings on the tight entries, so every
    row in turn takes its smallest tight column that still admits a perfect tight matching.
    """
    scale = 1.0 + float(np.abs(costs).max())
    tight = costs - row_potential[:, None] - column_potential[None, :] <= TIGHT_TOLERANCE * scale
    result = np.array(assignment, dtype=np.intp)
    owner = np.empty_like(result)
    owner[result] = np.arange(result.size)
    for row in range(rows):
        for column in np.flatnonzero(tight[row, : result[row]]):
            moves = _alternating_path(tight, result, owner, row, int(column))
            if moves:
                for moved, taken in moves:
                    result[moved] = taken
                    owner[taken] = moved
                break
    return result


def hungarian(costs: FloatArray) -> IntArray:
    """
    Minimum cost perfect assignment of a square cost matrix by the shortest augmenting path form of the Hungarian
    method with row and column potentials. Entry `i` of the result is the column assigned to row `i`; among equally
    good assignments the lexicographically smallest one is returned.
    """
    assignment, row_potential, column_potential = _potentials(costs)
    return lexicographic_assignment(costs, assignment, row_potential, column_potential, costs.shape[0])


def solve_lap(costs: Union[FloatArray, list[list[float]]], backend: LapBackend = "hungarian") -> Matching:
    """
    Injective assignment of the `m` rows of `costs` to its `n >= m` columns with minimum total cost.

    The `hungarian` backend pads the matrix with `n - m` constant dummy rows and runs the Hungarian method. Ties
    between optimal assignments go to the lexicographically smallest column sequence. The `scipy` backend delegates
    to `scipy.optimize.linear_sum_assignment`, which is much faster on large instances but leaves ties unspecified.
    """
    matrix = check_cost_matrix(costs)
    m, n = matrix.shape
    _logger.debug("solving %dx%d assignment problem with backend %s", m, n, backend)
    if backend == "scipy":
        _, columns = linear_sum_assignment(matrix)
        return Matching(np.asarray(columns, dtype=np.intp), n)
    if backend != "hungarian":
        raise ValueError(f"unknown assignment backend '{backend}'")
    padded = np.vstack([matrix, np.full((n - m, n), DUMMY_ROW_COST)])
    return Matching(hungarian(padded)[:m], n)
