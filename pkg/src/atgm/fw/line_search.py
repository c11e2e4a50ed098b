"""
FW Module: step size rules along the segment from the current iterate to the linear assignment vertex
"""

from typing import Optional, Tuple, Union

import numpy as np

from ..core.assignment import SoftAssignment, as_matrix
from ..objectives.types import Objective, ObjectiveEval
from ..utils import frobenius_inner
from ..utils.types import FloatArray
from .constants import BACKTRACKING_MAX_HALVINGS, QUADRATIC_CURVATURE_FLOOR
from .types import FwConfig

Iterate = Union[SoftAssignment, FloatArray]


def _segment(
    objective: Objective, current: Iterate, vertex: Iterate, start: Optional[ObjectiveEval]
) -> Tuple[FloatArray, FloatArray, ObjectiveEval, float]:
    matrix = as_matrix(current)
    direction = as_matrix(vertex) - matrix
    evaluation = objective.reduced(matrix) if start is None else start
    return matrix, direction, evaluation, frobenius_inner(evaluation.gradient, direction)


def quadratic_step(value: float, slope: float, vertex_value: float) -> float:
    """
    Minimizer in [0, 1] of the parabola with `phi(0) = value`, `phi'(0) = slope` and `phi(1) = vertex_value`. Without
    curvature the full step is taken for descent directions.
    """
    if slope >= 0.0:
        return 0.0
    curvature = vertex_value - value - slope
    if curvature <= QUADRATIC_CURVATURE_FLOOR:
        return 1.0
    return float(np.clip(-slope / (2.0 * curvature), 0.0, 1.0))


def exact_quadratic_step(
    objective: Objective, current: Iterate, vertex: Iterate, start: Optional[ObjectiveEval] = None
) -> Tuple[float, Optional[ObjectiveEval]]:
    """
    Exact minimizer of a quadratic objective along the segment, together with the evaluation at the vertex if the
    full step is taken.
    """
    _, _, evaluation, slope = _segment(objective, current, vertex, start)
    if slope >= 0.0:
        return 0.0, None
    at_vertex = objective.reduced(vertex)
    step = quadratic_step(evaluation.value, slope, at_vertex.value)
    return step, (at_vertex if step == 1.0 else None)


def line_search_exact_quadratic(objective: Objective, current: Iterate, vertex: Iterate) -> float:
    """
    Step size `alpha` in [0, 1] minimizing `phi(alpha) = g(P + alpha (P_tilde - P))` for quadratic `g`.

    The quadratic is fitted from `phi(0)`, `phi(1)` and `phi'(0)`. If its curvature vanishes the full step is taken
    for descent directions; directions that do not descend give 0.
    """
    return exact_quadratic_step(objective, current, vertex)[0]


def backtracking_step(
    objective: Objective,
    current: Iterate,
    vertex: Iterate,
    config: FwConfig,
    start: Optional[ObjectiveEval] = None,
) -> Tuple[float, Optional[ObjectiveEval]]:
    """
    Armijo backtracking along the segment, together with the evaluation at the accepted point.
    """
    matrix, direction, evaluation, slope = _segment(objective, current, vertex, start)
    if slope >= 0.0:
        return 0.0, None
    step = 1.0
    for _ in range(BACKTRACKING_MAX_HALVINGS):
        trial = objective.reduced((1.0 - step) * matrix + step * as_matrix(vertex))
        if trial.value <= evaluation.value + config.armijo_c * step * slope:
            return step, trial
        step *= config.armijo_shrink
    return 0.0, None


def line_search_backtracking(objective: Objective, current: Iterate, vertex: Iterate, config: FwConfig) -> float:
    """
    Largest step `alpha` in `{1, s, s^2, ...}` satisfying the sufficient decrease condition
    `g(P + alpha D) <= g(P) + c alpha <grad g(P), D>`, or 0 if `D` is not a descent direction.
    """
    return backtracking_step(objective, current, vertex, config)[0]
