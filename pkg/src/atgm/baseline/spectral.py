"""
Baseline Module: spectral matching on a dense affinity matrix
"""

from dataclasses import dataclass
from itertools import islice, permutations
from typing import Tuple

import numpy as np

from ..core.assignment import Matching
from ..core.exceptions import CapacityException, DimensionMismatchException
from ..lap import solve_lap
from ..objectives.types import AffinityMatrix
from ..utils.logging import get_logger
from ..utils.types import FloatArray, IntArray, Readout
from .constants import (
    BRUTE_FORCE_QAP_BATCH,
    BRUTE_FORCE_QAP_MAX_SOURCES,
    POWER_ITERATION_MAX_ITERATIONS,
    POWER_ITERATION_TOLERANCE,
)

_logger = get_logger(__name__)


@dataclass(frozen=True, eq=False)
class SpectralResult:
    """
    Result of spectral matching. `principal_vector` is the unit-norm leading eigenvector estimate of `W` in the
    `j * m + i` layout; `converged` is false if the power iteration hit its iteration cap.
    """

    matching: Matching
    principal_vector: FloatArray
    qap_score: float
    converged: bool
    iterations: int

    def principal_matrix(self) -> FloatArray:
        """
        The principal vector as an `(m, n)` matrix.
        """
        m = self.matching.size
        return np.asarray(self.principal_vector.reshape(-1, m).T, dtype=np.float64)


def _check(affinity: AffinityMatrix, m: int, n: int) -> None:
    if (affinity.m, affinity.n) != (m, n):
        raise DimensionMismatchException(f"affinity matrix is built for {affinity.m} x {affinity.n}, not {m} x {n}")
    if m > n:
        raise DimensionMismatchException(f"the source must not hold more points than the target, got {m} and {n}")


def matching_vector(matching: Matching, m: int) -> FloatArray:
    """
    Indicator vector of a matching in the `j * m + i` layout.
    """
    vector = np.zeros(m * matching.target_count)
    vector[matching.assignment * m + np.arange(m)] = 1.0
    return vector


def power_iteration(matrix: FloatArray) -> Tuple[FloatArray, bool, int]:
    """
    Leading eigenvector of a nonnegative symmetric matrix by power iteration from the uniform unit vector. Returns
    the vector, whether successive iterates came closer than the tolerance and the number of iterations.
    """
    vector = np.full(matrix.shape[0], 1.0 / np.sqrt(matrix.shape[0]))
    for iteration in range(1, POWER_ITERATION_MAX_ITERATIONS + 1):
        product = matrix @ vector
        norm = float(np.linalg.norm(product))
        if norm == 0.0:
            return vector, True, iteration
        product /= norm
        difference = float(np.linalg.norm(product - vector))
        vector = product
        if difference < POWER_ITERATION_TOLERANCE:
            return vector, True, iteration
    return vector, False, POWER_ITERATION_MAX_ITERATIONS


def greedy_readout(scores: FloatArray) -> IntArray:
    """
    Repeatedly fix the largest remaining entry `(i, j)` and discard row `i` and column `j`.
    """
    remaining = np.array(scores, dtype=np.float64, copy=True)
    assignment = np.empty(remaining.shape[0], dtype=np.intp)
    for _ in range(remaining.shape[0]):
        row, column = np.unravel_index(int(np.argmax(remaining)), remaining.shape)
        assignment[row] = column
        remaining[row, :] = -np.inf
        remaining[:, column] = -np.inf
    return assignment


def spectral_match(affinity: AffinityMatrix, m: int, n: int, readout: Readout = "greedy") -> SpectralResult:
    """
    Spectral matching: the leading eigenvector of `W`, discretized greedily or by a linear assignment.
    """
    _check(affinity, m, n)
    vector, converged, iterations = power_iteration(affinity.matrix)
    if not converged:
        _logger.warning("power iteration did not converge within %d iterations", iterations)
    scores = vector.reshape(n, m).T
    if readout == "greedy":
        matching = Matching(greedy_readout(scores), n)
    elif readout == "hungarian":
        matching = solve_lap(-scores)
    else:
        raise ValueError(f"unknown readout '{readout}'")
    score = affinity.score(matching_vector(matching, m))
    return SpectralResult(matching, vector, score, converged, iterations)


def brute_force_qap(affinity: AffinityMatrix, m: int, n: int) -> Tuple[Matching, float]:
    """
    Maximize `v^T W v` over all injective assignments by enumeration. Among equally good assignments the first one
    in lexicographic order is returned.
    """
    _check(affinity, m, n)
    if m > BRUTE_FORCE_QAP_MAX_SOURCES:
        raise CapacityException(f"brute force QAP is limited to m <= {BRUTE_FORCE_QAP_MAX_SOURCES}, got {m}")
    candidates = permutations(range(n), m)
    sources = np.arange(m)
    best_score, best = -np.inf, np.zeros(m, dtype=np.intp)
    while True:
        batch = np.array(list(islice(candidates, BRUTE_FORCE_QAP_BATCH)), dtype=np.intp).reshape(-1, m)
        if batch.shape[0] == 0:
            break
        indices = batch * m + sources
        scores = affinity.matrix[indices[:, :, None], indices[:, None, :]].sum(axis=(1, 2))
        position = int(np.argmax(scores))
        if scores[position] > best_score:
            best_score, best = float(scores[position]), batch[position]
    return Matching(best, n), best_score
