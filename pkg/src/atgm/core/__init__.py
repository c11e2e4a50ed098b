"""
Geometric and graph primitives
"""

from .assignment import Matching, SoftAssignment, as_matrix, feasibility_violation, row_sparsity
from .delaunay import delaunay_edges, delaunay_triangles, incircle, orientation
from .geometry import PointSet, normalize_points, transform
from .graph import (
    EdgeSet,
    EdgeWeights,
    GraphInstance,
    complete_graph,
    edge_lengths,
    inverse_length_graph,
    laplacian,
    prune_edges_kmeans,
    unit_weights,
)
from .io import (
    format_matching,
    format_point_set,
    parse_matching,
    parse_point_set,
    read_matching,
    read_point_set,
    write_matching,
    write_point_set,
)

__all__ = [
    "EdgeSet",
    "EdgeWeights",
    "GraphInstance",
    "Matching",
    "PointSet",
    "SoftAssignment",
    "as_matrix",
    "complete_graph",
    "delaunay_edges",
    "delaunay_triangles",
    "edge_lengths",
    "feasibility_violation",
    "format_matching",
    "format_point_set",
    "incircle",
    "inverse_length_graph",
    "laplacian",
    "normalize_points",
    "orientation",
    "parse_matching",
    "parse_point_set",
    "prune_edges_kmeans",
    "read_matching",
    "read_point_set",
    "row_sparsity",
    "transform",
    "unit_weights",
    "write_matching",
    "write_point_set",
]
