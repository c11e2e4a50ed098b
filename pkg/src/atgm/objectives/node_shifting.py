"""
Objectives Module: node shifting objectives

Both variants penalize neighbouring nodes whose shift vectors `(P Y)_a - A_a` differ, where the anchor `A` is either
the transformed source nodes or the original source nodes. Sums run over ordered node pairs.
"""

from typing import Optional, Union

import numpy as np

from ..core.assignment import SoftAssignment, as_matrix
from ..core.exceptions import DimensionMismatchException
from ..core.geometry import PointSet
from ..core.graph import EdgeWeights, GraphInstance, laplacian
from ..utils import frobenius_inner
from ..utils.types import FloatArray
from .types import ObjectiveEval, UnaryCost


class NodeShiftingObjective:
    """
    `G(P) = <D, P> + lambda1 ||P||_1 + lambda2 sum_ab S_ab ||shift_a - shift_b||^2` with `shift = P Y - A`.

    On the relaxed polytope `||P||_1 = m`, so `offset = lambda1 * m` and `reduced` leaves the sparsity term out
    entirely. The objective is a convex quadratic in `P`.
    """

    quadratic = True

    def __init__(
        self,
        anchor: PointSet,
        target: PointSet,
        weights: EdgeWeights,
        distances: Optional[UnaryCost] = None,
        lambda1: float = 1e3,
        lambda2: float = 1.0,
    ):
        if anchor.dim != target.dim:
            raise DimensionMismatchException(
                f"anchor points have dimension {anchor.dim}, target points have dimension {target.dim}"
            )
        if weights.size != anchor.size:
            raise DimensionMismatchException(f"{weights.size}-node weights used with {anchor.size} anchor points")
        self.anchor = anchor
        self.target = target
        self.m = anchor.size
        self.n = target.size
        self.distances = UnaryCost.zeros(self.m, self.n) if distances is None else distances
        if self.distances.shape != (self.m, self.n):
            raise DimensionMismatchException(
                f"distance cost of shape {self.distances.shape}, expected {(self.m, self.n)}"
            )
        self.lambda1 = lambda1
        self.lambda2 = lambda2
        self.weight_laplacian = laplacian(weights)
        self.offset = lambda1 * self.m

    @property
    def shape(self) -> tuple[int, int]:
        """Shape `(m, n)` of the soft assignments."""
        return (self.m, self.n)

    def shifts(self, assignment: Union[SoftAssignment, FloatArray]) -> FloatArray:
        """
        Shift vectors `(P Y)_a - A_a`, one row per source node.
        """
        matrix = as_matrix(assignment)
        if matrix.shape != self.shape:
            raise DimensionMismatchException(f"assignment of shape {matrix.shape}, expected {self.shape}")
        return np.asarray(matrix @ self.target.coords - self.anchor.coords, dtype=np.float64)

    def reduced(self, assignment: Union[SoftAssignment, FloatArray]) -> ObjectiveEval:
        """
        Value and gradient without the sparsity term.
        """
        matrix = as_matrix(assignment)
        shift = self.shifts(matrix)
        smoothed = self.weight_laplacian @ shift
        value = frobenius_inner(self.distances.matrix, matrix) + 2.0 * self.lambda2 * frobenius_inner(shift, smoothed)
        gradient = self.distances.matrix + 4.0 * self.lambda2 * smoothed @ self.target.coords.T
        return ObjectiveEval(value, gradient)

    def evaluate(self, assignment: Union[SoftAssignment, FloatArray]) -> ObjectiveEval:
        """
        Value and gradient at `assignment`, including the sparsity term.
        """
        matrix = as_matrix(assignment)
        core = self.reduced(matrix)
        value = core.value + self.lambda1 * float(np.abs(matrix).sum())
        return ObjectiveEval(value, core.gradient + self.lambda1)


def eval_G_bar(  # pylint: disable=invalid-name
    assignment: Union[SoftAssignment, FloatArray],
    transformed: PointSet,
    target: PointSet,
    weights: EdgeWeights,
    distances: Optional[UnaryCost] = None,
    lambda1: float = 1e3,
    lambda2: float = 1.0,
) -> ObjectiveEval:
    """
    Node shifting objective anchored at the transformed source nodes `X_bar`.
    """
    return NodeShiftingObjective(transformed, target, weights, distances, lambda1, lambda2).evaluate(assignment)


def eval_G_xy(  # pylint: disable=invalid-name
    assignment: Union[SoftAssignment, FloatArray],
    graph: GraphInstance,
    target: PointSet,
    distances: Optional[UnaryCost] = None,
    lambda1: float = 1e3,
    lambda2: float = 1.0,
) -> ObjectiveEval:
    """
    Node shifting objective anchored at the original source nodes of `graph`, weighted by the graph's weights.
    """
    return NodeShiftingObjective(graph.points, target, graph.weights, distances, lambda1, lambda2).evaluate(
        assignment
    )
