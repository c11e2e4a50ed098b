"""
FW Module: Frank-Wolfe minimization over the doubly-stochastic relaxation
"""

from typing import Tuple, Union

import numpy as np

from ..core.assignment import Matching, SoftAssignment, as_matrix
from ..core.exceptions import NumericException
from ..lap import solve_lap
from ..objectives.types import Objective, ObjectiveEval
from ..utils import frobenius_inner
from ..utils.logging import get_logger
from ..utils.types import FloatArray, LapBackend, SolverMode
from .active_set import ActiveSet
from .constants import CORRECTION_GAP_FRACTION, CORRECTION_MAX_ITERATIONS, ROUNDOFF_TOLERANCE
from .line_search import backtracking_step, quadratic_step
from .types import FwConfig, FwRecord, FwTrace

_logger = get_logger(__name__)


def linearized_vertex(gradient: FloatArray, backend: LapBackend = "hungarian") -> Matching:
    """
    The matching minimizing `<gradient, P>` over the relaxed polytope.
    """
    return solve_lap(gradient, backend)


def linearized_step(gradient: FloatArray, backend: LapBackend = "hungarian") -> SoftAssignment:
    """
    The binary extreme point `P_tilde` minimizing `<gradient, P>` over the relaxed polytope.
    """
    return SoftAssignment.from_matching(linearized_vertex(gradient, backend))


def _evaluate(objective: Objective, matrix: FloatArray, iteration: int) -> ObjectiveEval:
    try:
        return objective.reduced(matrix)
    except NumericException as exc:
        raise NumericException(exc.detail, stage=exc.stage, iteration=iteration) from exc


def _duality_gap(gradient: FloatArray, current: FloatArray, vertex: Matching) -> float:
    return -frobenius_inner(gradient, vertex.to_matrix() - current)


def _finish(
    mode: SolverMode, config: FwConfig, current: FloatArray, evaluation: ObjectiveEval, trace: FwTrace
) -> Tuple[SoftAssignment, FwTrace]:
    final_vertex = linearized_vertex(evaluation.gradient, config.lap_backend)
    trace.final_gap = _duality_gap(evaluation.gradient, current, final_vertex)
    _logger.debug(
        "%s solve stopped after %d iterations (%s), value %.12g, gap %.3g",
        mode,
        trace.iterations,
        trace.stop_reason,
        trace.final_value,
        trace.final_gap,
    )
    return SoftAssignment(current, check=config.check_iterates), trace


def _minimize_nonconvex(objective: Objective, current: FloatArray, config: FwConfig) -> Tuple[SoftAssignment, FwTrace]:
    evaluation = _evaluate(objective, current, 0)
    trace = FwTrace(initial_value=evaluation.value + objective.offset)
    trace.stop_reason = "iteration cap"

    for iteration in range(1, config.max_iters + 1):
        vertex = linearized_vertex(evaluation.gradient, config.lap_backend)
        target = vertex.to_matrix()
        gap = -frobenius_inner(evaluation.gradient, target - current)
        try:
            step, accepted = backtracking_step(objective, current, target, config, evaluation)
        except NumericException as exc:
            raise NumericException(exc.detail, stage=exc.stage, iteration=iteration) from exc
        if step <= 0.0:
            trace.halt(iteration, gap, vertex.assignment, "no descent step")
            break

        assert accepted is not None
        candidate = (1.0 - step) * current + step * target
        if config.check_iterates:
            SoftAssignment(candidate)

        decrease = evaluation.value - accepted.value
        current, evaluation = candidate, accepted
        trace.records.append(FwRecord(iteration, evaluation.value + objective.offset, step, gap, vertex.assignment))
        _logger.debug("iteration %d: value %.12g, step %.6g, gap %.6g", iteration, evaluation.value, step, gap)
        if decrease < config.rel_tol * (1.0 + abs(evaluation.value)):
            trace.stop_reason = "relative decrease"
            break

    return _finish("nonconvex-F", config, current, evaluation, trace)


def _minimize_convex(objective: Objective, current: FloatArray, config: FwConfig) -> Tuple[SoftAssignment, FwTrace]:
    evaluation = _evaluate(objective, current, 0)
    trace = FwTrace(initial_value=evaluation.value + objective.offset)
    trace.stop_reason = "iteration cap"
    active = ActiveSet(objective, current, evaluation)

    for iteration in range(1, config.max_iters + 1):
        vertex = linearized_vertex(evaluation.gradient, config.lap_backend)
        gap = _duality_gap(evaluation.gradient, current, vertex)
        if gap < config.gap_tol:
            trace.halt(iteration, gap, vertex.assignment, "duality gap")
            break
        at_vertex = _evaluate(objective, vertex.to_matrix(), iteration)
        step = quadratic_step(evaluation.value, -gap, at_vertex.value)
        active.move(active.add(vertex.assignment, at_vertex), step)
        corrections = active.correct(config.gap_tol * CORRECTION_GAP_FRACTION, CORRECTION_MAX_ITERATIONS)
        candidate = active.matrix()
        if config.check_iterates:
            SoftAssignment(candidate)
        accepted = _evaluate(objective, candidate, iteration)
        if accepted.value > evaluation.value + ROUNDOFF_TOLERANCE * (1.0 + abs(evaluation.value)):
            trace.halt(iteration, gap, vertex.assignment, "objective increase")
            break

        current, evaluation = candidate, accepted
        trace.records.append(FwRecord(iteration, evaluation.value + objective.offset, step, gap, vertex.assignment))
        _logger.debug(
            "iteration %d: value %.12g, step %.6g, gap %.6g, %d atoms after %d corrections",
            iteration,
            evaluation.value,
            step,
            gap,
            len(active),
            corrections,
        )

    return _finish("convex-G", config, current, evaluation, trace)


def minimize(
    objective: Objective,
    initial: Union[SoftAssignment, FloatArray],
    config: FwConfig,
    mode: SolverMode,
) -> Tuple[SoftAssignment, FwTrace]:
    """
    Minimize `objective` over the relaxed polytope starting at `initial`.

    Every iteration solves the linear assignment problem on the current gradient and moves towards the resulting
    vertex. `nonconvex-F` uses backtracking and stops on a small relative decrease. `convex-G` takes the exact
    quadratic step, then re-optimizes the weights of all vertices visited so far (fully corrective Frank-Wolfe)
    and stops once the duality gap drops below `gap_tol`. Steps that would increase the objective beyond round-off
    are rejected and end the solve. The duality gap at the returned iterate is stored in the trace.
    """
    if mode not in ("nonconvex-F", "convex-G"):
        raise ValueError(f"unknown solver mode '{mode}'")
    current = np.array(as_matrix(initial), dtype=np.float64)
    if mode == "convex-G":
        return _minimize_convex(objective, current, config)
    return _minimize_nonconvex(objective, current, config)
