"""
Objective functions, unary costs and affinity matrices
"""

from .affinity import affinity_matrix, edge_angles
from .edge_discrepancy import EdgeDiscrepancyObjective, eval_F
from .node_shifting import NodeShiftingObjective, eval_G_bar, eval_G_xy
from .types import AffinityMatrix, Objective, ObjectiveEval, UnaryCost
from .unary import chi_square_cost, distance_matrix, shape_context_cost, shape_context_histograms

__all__ = [
    "AffinityMatrix",
    "EdgeDiscrepancyObjective",
    "NodeShiftingObjective",
    "Objective",
    "ObjectiveEval",
    "UnaryCost",
    "affinity_matrix",
    "chi_square_cost",
    "distance_matrix",
    "edge_angles",
    "eval_F",
    "eval_G_bar",
    "eval_G_xy",
    "shape_context_cost",
    "shape_context_histograms",
]
