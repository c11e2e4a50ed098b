"""
Pipeline Module: the full matcher

Both point sets are normalized independently. If the target holds more points than the source, removal rounds
alternate node shifting and edge discrepancy solves with a ratio test that discards target nodes far from the
transformed source. Every ratio test sees all target nodes, and the retained nodes are normalized again. The final
edge discrepancy solve is refined by a node shifting solve anchored at the transformed source nodes and the result
is discretized by a linear assignment.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, NamedTuple, Optional, Tuple

import numpy as np

from ..core.assignment import Matching, SoftAssignment, as_matrix
from ..core.delaunay import delaunay_edges
from ..core.exceptions import (
    DegenerateInputException,
    DimensionMismatchException,
    NumericException,
    UnsupportedDimensionException,
)
from ..core.geometry import PointSet, normalize_points, transform
from ..core.graph import EdgeSet, EdgeWeights, GraphInstance, inverse_length_graph, prune_edges_kmeans, unit_weights
from ..fw.solver import minimize
from ..fw.types import FwConfig, FwTrace
from ..lap import solve_lap
from ..objectives.edge_discrepancy import EdgeDiscrepancyObjective
from ..objectives.node_shifting import NodeShiftingObjective
from ..objectives.types import Objective, UnaryCost
from ..objectives.unary import distance_matrix, shape_context_cost
from ..utils.logging import get_logger
from ..utils.types import FloatArray, LapBackend, SolverMode
from .config import AtgmConfig
from .constants import REMOVAL_GAP_TOLERANCE, SPARSITY_THRESHOLD
from .removal import RemovalState, remove_outliers

_logger = get_logger(__name__)


@dataclass
class AtgmDiagnostics:
    """
    Everything the matcher records besides its result: one trace per solve, the final objective value per stage,
    the sparsity of the soft assignment before discretization and the removal bookkeeping.
    """

    traces: List[Tuple[str, FwTrace]] = field(default_factory=list)
    sparsity: float = 0.0
    rounds: int = 0
    removal: Optional[RemovalState] = None
    fallbacks: List[str] = field(default_factory=list)

    @property
    def objectives(self) -> Dict[str, float]:
        """Final objective value per stage label."""
        return {label: trace.final_value for label, trace in self.traces}

    @property
    def kept_history(self) -> List[int]:
        """Number of retained target nodes after every removal, starting with all of them."""
        return [] if self.removal is None else list(self.removal.history)

    def trace(self, label: str) -> FwTrace:
        """
        The trace of the stage named `label`.
        """
        for name, trace in self.traces:
            if name == label:
                return trace
        raise KeyError(label)

    def to_dict(self) -> Dict[str, Any]:
        """
        JSON compatible summary.
        """
        return {
            "stages": [{"stage": label, **trace.summary()} for label, trace in self.traces],
            "objectives": self.objectives,
            "sparsity": self.sparsity,
            "rounds": self.rounds,
            "kept_history": self.kept_history,
            "kept": [] if self.removal is None else [int(j) for j in self.removal.kept],
            "fallbacks": list(self.fallbacks),
        }


class AtgmResult(NamedTuple):
    """
    Matching and soft assignment in original target indices, with diagnostics.
    """

    matching: Matching
    assignment: SoftAssignment
    diagnostics: AtgmDiagnostics


def post_discretize(assignment: SoftAssignment, backend: LapBackend = "hungarian") -> Matching:
    """
    The matching carrying the largest total mass of `assignment`.
    """
    return solve_lap(-as_matrix(assignment), backend)


class _Run:
    """
    State of one matcher run on normalized point sets.
    """

    def __init__(self, source: PointSet, target: PointSet, config: AtgmConfig):
        self.source = source
        self.target = target
        self.config = config
        self.diagnostics = AtgmDiagnostics()
        self.removal = RemovalState.full(target.size)
        self.graph = self._source_graph()

    def _fallback(self, message: str) -> None:
        _logger.warning(message)
        self.diagnostics.fallbacks.append(message)

    def _source_graph(self) -> GraphInstance:
        if self.config.connectivity == "delaunay":
            try:
                return inverse_length_graph(self.source, delaunay_edges(self.source))
            except (DegenerateInputException, UnsupportedDimensionException) as exc:
                self._fallback(f"Delaunay connectivity unavailable ({exc}), using the complete graph")
        return inverse_length_graph(self.source)

    def anchor_weights(self) -> EdgeWeights:
        """
        Unit weights on the pruned Delaunay edges of the source, or on the complete graph if there is no
        triangulation.
        """
        try:
            return unit_weights(prune_edges_kmeans(delaunay_edges(self.source), self.source))
        except (DegenerateInputException, UnsupportedDimensionException) as exc:
            self._fallback(f"pruned Delaunay weights unavailable ({exc}), using unit weights on the complete graph")
            return unit_weights(EdgeSet.complete(self.source.size))

    def current_target(self) -> PointSet:
        """
        The retained target nodes, normalized again once nodes were removed.
        """
        retained = self.target.subset(self.removal.kept)
        return retained if self.removal.count == self.target.size else normalize_points(retained)

    def unary(self, target: PointSet) -> Optional[UnaryCost]:
        """
        Unary cost of the edge discrepancy solves.
        """
        if self.config.unary == "zero":
            return None
        try:
            return shape_context_cost(self.source, target)
        except UnsupportedDimensionException as exc:
            self._fallback(f"shape context unavailable ({exc}), using a zero unary cost")
            return None

    def solve(
        self, label: str, objective: Objective, initial: FloatArray, config: FwConfig, mode: SolverMode
    ) -> SoftAssignment:
        """
        Run one Frank-Wolfe solve and record its trace under `label`.
        """
        _logger.info("stage %s: %s solve on %d x %d", label, mode, *objective.shape)
        try:
            assignment, trace = minimize(objective, initial, config, mode)
        except NumericException as exc:
            raise exc.with_stage(label) from exc
        self.diagnostics.traces.append((label, trace))
        _logger.info(
            "stage %s: %d iterations, value %.9g (%s)", label, trace.iterations, trace.final_value, trace.stop_reason
        )
        return assignment

    def edge_discrepancy(self, label: str) -> SoftAssignment:
        """
        Edge discrepancy solve from the barycenter against the retained target nodes.
        """
        target = self.current_target()
        objective = EdgeDiscrepancyObjective(
            self.graph, target, self.unary(target), self.config.lam, self.config.epsilon
        )
        initial = SoftAssignment.uniform(self.source.size, target.size).matrix
        return self.solve(label, objective, initial, self.config.fw, "nonconvex-F")

    def source_shifting(self, label: str) -> SoftAssignment:
        """
        Node shifting solve anchored at the original source nodes from the barycenter, on inverse edge length
        weights of the complete source graph.
        """
        target = self.current_target()
        distances = distance_matrix(self.source, target) if self.config.g_xy_unary else None
        objective = NodeShiftingObjective(
            self.source,
            target,
            inverse_length_graph(self.source).weights,
            distances,
            self.config.lambda1,
            self.config.lambda2,
        )
        initial = SoftAssignment.uniform(self.source.size, target.size).matrix
        return self.solve(label, objective, initial, self.config.fw_convex, "convex-G")

    def transformed_shifting(self, label: str, initial: SoftAssignment) -> SoftAssignment:
        """
        Node shifting solve anchored at the transformed source nodes, started at `initial`.
        """
        target = self.current_target()
        transformed = transform(initial, target)
        objective = NodeShiftingObjective(
            transformed,
            target,
            self.anchor_weights(),
            distance_matrix(transformed, target),
            self.config.lambda1,
            self.config.lambda2,
        )
        return self.solve(label, objective, initial.matrix, self.config.fw_convex, "convex-G")

    def remove(self, label: str, assignment: SoftAssignment, require_gap: bool = False) -> None:
        """
        Ratio test of every target node against the transformed source nodes of `assignment`, the result of the
        solve `label`. Nodes dropped in an earlier round are tested again. With `require_gap` the test is skipped
        unless the duality gap of the solve is below `REMOVAL_GAP_TOLERANCE`.
        """
        if require_gap:
            gap = self.diagnostics.trace(label).final_gap
            if gap is None or gap >= REMOVAL_GAP_TOLERANCE:
                self._fallback(f"stage {label} did not converge, skipping its ratio test")
                return
        transformed = transform(assignment, self.target.subset(self.removal.kept))
        retained = remove_outliers(
            transformed, self.target, self.config.ratio_k, self.source.size, self.config.removal_rule
        )
        self.removal = self.removal.advance(retained.kept)

    def removal_rounds(self) -> None:
        """
        Alternate node shifting and edge discrepancy solves, each followed by a ratio test.
        """
        rounds = self.config.rounds_for(self.source.size, self.target.size)
        self.diagnostics.rounds = rounds
        for index in range(1, rounds + 1):
            label = f"round {index} G_xy"
            self.remove(label, self.source_shifting(label), require_gap=True)
            label = f"round {index} F"
            self.remove(label, self.edge_discrepancy(label))
            _logger.info("round %d: %d target nodes retained", index, self.removal.count)
        self.diagnostics.removal = self.removal


def _check_sizes(source: PointSet, target: PointSet) -> None:
    if source.dim != target.dim:
        raise DimensionMismatchException(f"cannot match {source.dim}-d with {target.dim}-d points")
    if source.size < 2:
        raise DimensionMismatchException("matching needs at least two source points")
    if source.size > target.size:
        raise DimensionMismatchException(
            f"the source must not hold more points than the target, got {source.size} and {target.size}"
        )


def filter_outliers(source: PointSet, target: PointSet, config: Optional[AtgmConfig] = None) -> RemovalState:
    """
    Run only the removal rounds of the matcher and return the retained target nodes in original indices.
    """
    config = AtgmConfig() if config is None else config
    _check_sizes(source, target)
    run = _Run(normalize_points(source), normalize_points(target), config)
    run.removal_rounds()
    return run.removal


def atgm(source: PointSet, target: PointSet, config: Optional[AtgmConfig] = None) -> AtgmResult:
    """
    Match the `m` source points into the `n >= m` target points.
    """
    config = AtgmConfig() if config is None else config
    _check_sizes(source, target)
    run = _Run(normalize_points(source), normalize_points(target), config)
    run.removal_rounds()

    assignment = run.edge_discrepancy("F")
    if config.stages == "f-g":
        assignment = run.transformed_shifting("G_bar", assignment)
    run.diagnostics.sparsity = assignment.sparsity(SPARSITY_THRESHOLD)

    local = post_discretize(assignment, config.lap_backend)
    kept = run.removal.kept
    matching = local.relabel(kept, target.size)
    expanded = np.zeros((source.size, target.size))
    expanded[:, kept] = assignment.matrix
    _logger.info(
        "matched %d source nodes into %d of %d target nodes, sparsity %.3f",
        source.size,
        kept.size,
        target.size,
        run.diagnostics.sparsity,
    )
    return AtgmResult(matching, SoftAssignment(expanded, check=False), run.diagnostics)
