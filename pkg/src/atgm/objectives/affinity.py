"""
Objectives Module: dense affinity matrix for quadratic assignment baselines
"""

from typing import Optional, Tuple

import numpy as np

from ..core.exceptions import CapacityException, DimensionMismatchException
from ..core.geometry import PointSet
from ..core.graph import EdgeSet
from ..utils import pairwise_distances
from ..utils.types import AffinityKind, FloatArray
from .constants import AFFINITY_MAX_SIZE, LENGTH_ONLY_SCALE
from .types import AffinityMatrix, UnaryCost


def edge_angles(points: PointSet) -> FloatArray:
    """
    Angle of every undirected edge against the horizontal, taken in (-pi/2, pi/2].
    """
    offsets = points.coords[None, :, :] - points.coords[:, None, :]
    angles = np.mod(np.arctan2(offsets[..., 1], offsets[..., 0]), np.pi)
    return np.asarray(np.where(angles > np.pi / 2.0, angles - np.pi, angles), dtype=np.float64)


def _edge_mask(edges: Optional[EdgeSet], size: int) -> FloatArray:
    if edges is None:
        return np.ones((size, size)) - np.eye(size)
    if edges.size != size:
        raise DimensionMismatchException(f"edge set over {edges.size} nodes used with {size} points")
    return edges.mask().astype(np.float64)


def affinity_matrix(
    source: PointSet,
    target: PointSet,
    kind: AffinityKind = "angle-length",
    scale: float = LENGTH_ONLY_SCALE,
    unary: Optional[UnaryCost] = None,
    edges: Tuple[Optional[EdgeSet], Optional[EdgeSet]] = (None, None),
) -> AffinityMatrix:
    """
    Build the affinity matrix `W` between two point sets.

    Off-diagonal entries compare the edge `(i1, i2)` of the source with the edge `(j1, j2)` of the target:

    - `angle-length`: `exp(-(l_x - l_y)^2 / 2 - (theta_x - theta_y)^2 / 2)`, angle differences wrapped modulo pi
    - `length-only`: `exp(-(l_x - l_y)^2 / scale)`

    Entries with `i1 == i2` or `j1 == j2`, or whose edges are missing from the optional edge sets, are 0. The diagonal
    holds `exp(-C_ij)` if a unary cost is given and 0 otherwise.
    """
    if source.dim != target.dim:
        raise DimensionMismatchException(f"cannot compare {source.dim}-d with {target.dim}-d points")
    m, n = source.size, target.size
    if m * n > AFFINITY_MAX_SIZE:
        raise CapacityException(f"affinity matrices are limited to mn <= {AFFINITY_MAX_SIZE}, got {m * n}")

    source_lengths, target_lengths = pairwise_distances(source.coords), pairwise_distances(target.coords)
    length_gap = source_lengths[:, None, :, None] - target_lengths[None, :, None, :]
    if kind == "angle-length":
        angle_gap = edge_angles(source)[:, None, :, None] - edge_angles(target)[None, :, None, :]
        angle_gap = np.mod(angle_gap + np.pi / 2.0, np.pi) - np.pi / 2.0
        blocks = np.exp(-0.5 * length_gap**2 - 0.5 * angle_gap**2)
    elif kind == "length-only":
        blocks = np.exp(-(length_gap**2) / scale)
    else:
        raise ValueError(f"unknown affinity kind '{kind}'")

    source_mask, target_mask = _edge_mask(edges[0], m), _edge_mask(edges[1], n)
    blocks *= source_mask[:, None, :, None] * target_mask[None, :, None, :]
    # blocks[i1, j1, i2, j2] -> W[j1 * m + i1, j2 * m + i2]
    matrix = blocks.transpose(1, 0, 3, 2).reshape(m * n, m * n)
    if unary is not None:
        if unary.shape != (m, n):
            raise DimensionMismatchException(f"unary cost of shape {unary.shape}, expected {(m, n)}")
        np.fill_diagonal(matrix, np.exp(-unary.matrix.T.reshape(-1)))
    return AffinityMatrix(matrix, m, n)
