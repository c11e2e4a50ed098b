"""
Core Module: soft assignments in the doubly-stochastic relaxation and hard matchings
"""

from dataclasses import InitVar, dataclass
from typing import Optional, Sequence, Union

import numpy as np

from ..utils.types import FloatArray, IntArray
from .constants import COLUMN_SUM_TOLERANCE, ENTRY_TOLERANCE, ROW_SUM_TOLERANCE
from .exceptions import InfeasibleAssignmentException, NumericException, ShapeException


@dataclass(frozen=True, eq=False)
class SoftAssignment:
    """
    An `(m, n)` matrix `P` with `m <= n`, entries in [0, 1], unit row sums and column sums of at most one. Every
    iterate of the Frank-Wolfe solver is one of these.

    Passing `check=False` skips the invariant checks, which is only meant for matrices that are feasible by
    construction (convex combinations of feasible matrices).
    """

    matrix: FloatArray
    check: InitVar[bool] = True

    def __post_init__(self, check: bool) -> None:
        matrix = np.array(self.matrix, dtype=np.float64, copy=True)
        if matrix.ndim != 2 or matrix.shape[0] < 1:
            raise ShapeException(f"a soft assignment needs a non-empty 2-d matrix, got shape {matrix.shape}")
        if matrix.shape[0] > matrix.shape[1]:
            raise ShapeException(f"a soft assignment needs m <= n, got shape {matrix.shape}")
        if not np.all(np.isfinite(matrix)):
            raise NumericException("soft assignment contains non-finite entries")
        if check:
            violation = feasibility_violation(matrix)
            if violation is not None:
                raise InfeasibleAssignmentException(violation)
        matrix.flags.writeable = False
        object.__setattr__(self, "matrix", matrix)

    @classmethod
    def uniform(cls, m: int, n: int) -> "SoftAssignment":
        """
        The barycenter `P_ij = 1/n` of the relaxed polytope.
        """
        if m > n:
            raise ShapeException(f"a soft assignment needs m <= n, got m={m}, n={n}")
        return cls(np.full((m, n), 1.0 / n))

    @classmethod
    def from_matching(cls, matching: "Matching") -> "SoftAssignment":
        """
        The binary extreme point selecting `matching`.
        """
        return cls(matching.to_matrix())

    @property
    def shape(self) -> tuple[int, int]:
        """Shape `(m, n)`."""
        return (int(self.matrix.shape[0]), int(self.matrix.shape[1]))

    def is_binary(self) -> bool:
        """
        Whether every entry is exactly 0 or 1.
        """
        return bool(np.all((self.matrix == 0.0) | (self.matrix == 1.0)))

    def sparsity(self, threshold: float) -> float:
        """
        Fraction of rows holding an entry of at least `threshold`. For thresholds above 1/2 at most one entry per row
        can qualify.
        """
        return row_sparsity(self.matrix, threshold)


def feasibility_violation(matrix: FloatArray) -> Optional[str]:
    """
    Describe the first violated soft assignment invariant of `matrix`, or return `None` if it is feasible.
    """
    if np.any(matrix < -ENTRY_TOLERANCE) or np.any(matrix > 1.0 + ENTRY_TOLERANCE):
        return "entries must lie in [0, 1]"
    row_error = np.abs(matrix.sum(axis=1) - 1.0)
    if np.any(row_error > ROW_SUM_TOLERANCE):
        row = int(np.argmax(row_error))
        return f"row {row} sums to {matrix[row].sum():.12g}, expected 1"
    column_sums = matrix.sum(axis=0)
    if np.any(column_sums > 1.0 + COLUMN_SUM_TOLERANCE):
        column = int(np.argmax(column_sums))
        return f"column {column} sums to {column_sums[column]:.12g}, expected at most 1"
    return None


def as_matrix(assignment: Union[SoftAssignment, FloatArray]) -> FloatArray:
    """
    Return the plain matrix behind a soft assignment, or the argument itself as a float matrix.
    """
    if isinstance(assignment, SoftAssignment):
        return assignment.matrix
    matrix = np.asarray(assignment, dtype=np.float64)
    if matrix.ndim != 2:
        raise ShapeException(f"expected a 2-d matrix, got shape {matrix.shape}")
    return matrix


@dataclass(frozen=True, eq=False)
class Matching:
    """
    Injective map `sigma` from the `m` source nodes into the `n` target nodes. Entry `i` of `assignment` is the
    target index `sigma(i)`. When `n` is omitted it is taken as the smallest feasible target count.
    """

    assignment: IntArray
    n: Optional[int] = None

    def __post_init__(self) -> None:
        assignment = np.array(self.assignment, dtype=np.intp, copy=True).reshape(-1)
        if assignment.size < 1:
            raise InfeasibleAssignmentException("a matching needs at least one source node")
        n = int(assignment.max()) + 1 if self.n is None else int(self.n)
        if np.any(assignment < 0) or np.any(assignment >= n):
            raise InfeasibleAssignmentException(f"matching targets must lie in [0, {n})")
        if np.unique(assignment).size != assignment.size:
            raise InfeasibleAssignmentException("matching is not injective")
        assignment.flags.writeable = False
        object.__setattr__(self, "assignment", assignment)
        object.__setattr__(self, "n", n)

    @classmethod
    def from_pairs(cls, pairs: Sequence[tuple[int, int]], n: Optional[int] = None) -> "Matching":
        """
        Build a matching from `(i, j)` pairs. Every source index `0..m-1` must appear exactly once.
        """
        ordered = sorted(pairs)
        sources = [i for i, _ in ordered]
        if sources != list(range(len(ordered))):
            raise InfeasibleAssignmentException("matching pairs must cover the source indices 0..m-1 exactly once")
        return cls(np.array([j for _, j in ordered], dtype=np.intp), n)

    @property
    def size(self) -> int:
        """Number of source nodes `m`."""
        return int(self.assignment.size)

    @property
    def target_count(self) -> int:
        """Number of target nodes `n`."""
        assert self.n is not None
        return self.n

    def pairs(self) -> list[tuple[int, int]]:
        """
        The `(i, sigma(i))` pairs in source order.
        """
        return [(i, int(j)) for i, j in enumerate(self.assignment)]

    def to_matrix(self) -> FloatArray:
        """
        The binary `(m, n)` matrix with a single one per row at `sigma(i)`.
        """
        matrix = np.zeros((self.size, self.target_count), dtype=np.float64)
        matrix[np.arange(self.size), self.assignment] = 1.0
        return matrix

    def relabel(self, targets: Union[Sequence[int], IntArray], n: int) -> "Matching":
        """
        Express the matching in another target index space: target `j` becomes `targets[j]` out of `n`.
        """
        lookup = np.asarray(targets, dtype=np.intp)
        return Matching(lookup[self.assignment], n)

    def cost(self, costs: FloatArray) -> float:
        """
        Total cost `sum_i C[i, sigma(i)]` of the matching under the cost matrix `costs`.
        """
        return float(np.asarray(costs)[np.arange(self.size), self.assignment].sum())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Matching):
            return NotImplemented
        return self.n == other.n and bool(np.array_equal(self.assignment, other.assignment))

    def __hash__(self) -> int:
        return hash((self.n, tuple(int(j) for j in self.assignment)))


def row_sparsity(matrix: FloatArray, threshold: float) -> float:
    """
    Fraction of rows of `matrix` holding an entry of at least `threshold`, for thresholds in (0.5, 1].
    """
    if not 0.5 < threshold <= 1.0:
        raise ValueError(f"sparsity threshold must lie in (0.5, 1], got {threshold}")
    return float(np.mean(np.asarray(matrix).max(axis=1) >= threshold))
