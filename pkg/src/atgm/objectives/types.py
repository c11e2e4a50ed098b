"""
Objectives Module: result and cost types shared by all objective functions
"""

from dataclasses import dataclass
from typing import Protocol, Union

import numpy as np

from ..core.assignment import SoftAssignment
from ..core.exceptions import CapacityException, DegenerateInputException, NumericException, ShapeException
from ..utils.types import FloatArray
from .constants import AFFINITY_MAX_SIZE


@dataclass(frozen=True, eq=False)
class ObjectiveEval:
    """
    Value and gradient of an objective at one soft assignment.
    """

    value: float
    gradient: FloatArray

    def __post_init__(self) -> None:
        if not np.isfinite(self.value) or not np.all(np.isfinite(self.gradient)):
            raise NumericException("objective evaluation produced a non-finite value or gradient")


@dataclass(frozen=True, eq=False)
class UnaryCost:
    """
    Nonnegative `(m, n)` cost matrix of assigning source node `i` to target node `j`.
    """

    matrix: FloatArray

    def __post_init__(self) -> None:
        matrix = np.array(self.matrix, dtype=np.float64, copy=True)
        if matrix.ndim != 2:
            raise ShapeException(f"a unary cost needs a 2-d matrix, got shape {matrix.shape}")
        if not np.all(np.isfinite(matrix)):
            raise NumericException("unary cost contains non-finite entries")
        if np.any(matrix < 0.0):
            raise DegenerateInputException("unary costs must be nonnegative")
        matrix.flags.writeable = False
        object.__setattr__(self, "matrix", matrix)

    @classmethod
    def zeros(cls, m: int, n: int) -> "UnaryCost":
        """
        The all-zero cost.
        """
        return cls(np.zeros((m, n)))

    @property
    def shape(self) -> tuple[int, int]:
        """Shape `(m, n)`."""
        return (int(self.matrix.shape[0]), int(self.matrix.shape[1]))


@dataclass(frozen=True, eq=False)
class AffinityMatrix:
    """
    Dense, symmetric, nonnegative `(mn, mn)` affinity matrix. The pair `(i, j)` sits at index `j * m + i`; the
    diagonal holds node affinities and the off-diagonal entries hold edge-pair affinities.
    """

    matrix: FloatArray
    m: int
    n: int

    def __post_init__(self) -> None:
        size = self.m * self.n
        if size > AFFINITY_MAX_SIZE:
            raise CapacityException(f"affinity matrices are limited to mn <= {AFFINITY_MAX_SIZE}, got {size}")
        matrix = np.array(self.matrix, dtype=np.float64, copy=True)
        if matrix.shape != (size, size):
            raise ShapeException(f"affinity matrix for m={self.m}, n={self.n} needs shape {(size, size)}")
        if not np.all(np.isfinite(matrix)) or np.any(matrix < 0.0):
            raise DegenerateInputException("affinities must be finite and nonnegative")
        if not np.allclose(matrix, matrix.T, rtol=0.0, atol=1e-12):
            raise DegenerateInputException("affinity matrix must be symmetric")
        matrix.flags.writeable = False
        object.__setattr__(self, "matrix", matrix)

    def score(self, vector: FloatArray) -> float:
        """
        Quadratic score `v^T W v` of a vectorized assignment.
        """
        return float(vector @ self.matrix @ vector)


class Objective(Protocol):
    """
    Interface of the objectives minimized by the Frank-Wolfe solver.

    `offset` is the part of the value that is constant on the relaxed polytope and `reduced` evaluates the
    objective without it: the value drops `offset` and the gradient drops the matching uniform shift. Minimizers
    and line searches work on `reduced` evaluations.
    """

    offset: float
    quadratic: bool

    @property
    def shape(self) -> tuple[int, int]:
        """Shape `(m, n)` of the soft assignments the objective is defined on."""

    def evaluate(self, assignment: Union[SoftAssignment, FloatArray]) -> ObjectiveEval:
        """Full value and gradient."""

    def reduced(self, assignment: Union[SoftAssignment, FloatArray]) -> ObjectiveEval:
        """Value and gradient without the constant polytope offset."""
