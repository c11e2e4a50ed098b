"""
Objectives Module: edge discrepancy objective

The pairwise term compares every edge length of the source graph with the length of the same edge after the
source nodes were moved to `X_bar = P Y`. Sums run over ordered node pairs.
"""

from typing import Optional, Union

import numpy as np

from ..core.assignment import SoftAssignment, as_matrix
from ..core.exceptions import DimensionMismatchException
from ..core.geometry import PointSet
from ..core.graph import GraphInstance, laplacian
from ..utils import frobenius_inner, pairwise_distances
from ..utils.types import FloatArray
from .constants import DEFAULT_EPSILON
from .types import ObjectiveEval, UnaryCost


class EdgeDiscrepancyObjective:
    """
    `F(P) = <C, P> + lambda * sum_ab S_ab (||X_a - X_b|| - ||X_bar_a - X_bar_b||)^2` with `X_bar = P Y`.

    The gradient uses `S*_ab = S_ab ||X_a - X_b|| / (||X_bar_a - X_bar_b|| + epsilon)` so it stays finite when two
    transformed nodes coincide.
    """

    quadratic = False
    offset = 0.0

    def __init__(
        self,
        graph: GraphInstance,
        target: PointSet,
        unary: Optional[UnaryCost] = None,
        lam: float = 1.0,
        epsilon: float = DEFAULT_EPSILON,
    ):
        if graph.points.dim != target.dim:
            raise DimensionMismatchException(
                f"source graph has dimension {graph.points.dim}, target points have dimension {target.dim}"
            )
        if epsilon <= 0.0:
            raise ValueError("epsilon must be positive")
        self.graph = graph
        self.target = target
        self.lam = lam
        self.epsilon = epsilon
        self.m = graph.size
        self.n = target.size
        self.unary = UnaryCost.zeros(self.m, self.n) if unary is None else unary
        if self.unary.shape != (self.m, self.n):
            raise DimensionMismatchException(f"unary cost of shape {self.unary.shape}, expected {(self.m, self.n)}")
        self.weights = graph.weights.matrix
        self.lengths = pairwise_distances(graph.points.coords)
        self.weight_laplacian = laplacian(self.weights)

    @property
    def shape(self) -> tuple[int, int]:
        """Shape `(m, n)` of the soft assignments."""
        return (self.m, self.n)

    def _check(self, matrix: FloatArray) -> None:
        if matrix.shape != self.shape:
            raise DimensionMismatchException(f"assignment of shape {matrix.shape}, expected {self.shape}")

    def pairwise(self, assignment: Union[SoftAssignment, FloatArray]) -> float:
        """
        The unweighted pairwise term `sum_ab S_ab (l_ab - l_bar_ab)^2`.
        """
        matrix = as_matrix(assignment)
        self._check(matrix)
        transformed = pairwise_distances(matrix @ self.target.coords)
        return float(np.sum(self.weights * (self.lengths - transformed) ** 2))

    def evaluate(self, assignment: Union[SoftAssignment, FloatArray]) -> ObjectiveEval:
        """
        Value and gradient at `assignment`.
        """
        matrix = as_matrix(assignment)
        self._check(matrix)
        moved = matrix @ self.target.coords
        transformed = pairwise_distances(moved)
        value = frobenius_inner(self.unary.matrix, matrix) + self.lam * float(
            np.sum(self.weights * (self.lengths - transformed) ** 2)
        )
        scaled = self.weights * self.lengths / (transformed + self.epsilon)
        difference = self.weight_laplacian - laplacian(scaled)
        gradient = self.unary.matrix + 4.0 * self.lam * (difference @ moved) @ self.target.coords.T
        return ObjectiveEval(value, gradient)

    def reduced(self, assignment: Union[SoftAssignment, FloatArray]) -> ObjectiveEval:
        """
        Same as `evaluate`; the objective has no constant part on the polytope.
        """
        return self.evaluate(assignment)


def eval_F(  # pylint: disable=invalid-name
    assignment: Union[SoftAssignment, FloatArray],
    graph: GraphInstance,
    target: PointSet,
    unary: Optional[UnaryCost] = None,
    lam: float = 1.0,
    epsilon: float = DEFAULT_EPSILON,
) -> ObjectiveEval:
    """
    Evaluate the edge discrepancy objective of `graph` against `target` at `assignment`.
    """
    return EdgeDiscrepancyObjective(graph, target, unary, lam, epsilon).evaluate(assignment)
