"""
Objectives Module: unary costs
"""

import numpy as np

from ..core.exceptions import DegenerateInputException, DimensionMismatchException, UnsupportedDimensionException
from ..core.geometry import PointSet
from ..utils import pairwise_distances
from ..utils.types import FloatArray
from .constants import (
    SHAPE_CONTEXT_ANGLE_BINS,
    SHAPE_CONTEXT_INNER_RADIUS,
    SHAPE_CONTEXT_OUTER_RADIUS,
    SHAPE_CONTEXT_RADIUS_BINS,
)
from .types import UnaryCost


def distance_matrix(transformed: PointSet, target: PointSet) -> UnaryCost:
    """
    Euclidean distances `D_ij = ||X_bar_i - Y_j||`.
    """
    if transformed.dim != target.dim:
        raise DimensionMismatchException(f"cannot compare {transformed.dim}-d with {target.dim}-d points")
    return UnaryCost(pairwise_distances(transformed.coords, target.coords))


def shape_context_histograms(points: PointSet) -> FloatArray:
    """
    Log-polar shape context histogram of every point, one row of `radius bins * angle bins` frequencies per point.

    Radii are measured in units of the mean pairwise distance of the set. Radii inside the innermost ring count
    towards the first radius bin, radii beyond the outermost ring towards the last one, so every row sums to 1.
    """
    if points.dim != 2:
        raise UnsupportedDimensionException(f"shape context needs planar points, got d={points.dim}")
    size = points.size
    if size < 2:
        raise DegenerateInputException("shape context needs at least two points")
    offsets = points.coords[None, :, :] - points.coords[:, None, :]
    radii = np.hypot(offsets[..., 0], offsets[..., 1])
    others = ~np.eye(size, dtype=np.bool_)
    mean_radius = float(radii[others].mean())
    if mean_radius <= 0.0:
        raise DegenerateInputException("shape context is undefined for identical points")

    edges = mean_radius * np.geomspace(
        SHAPE_CONTEXT_INNER_RADIUS, SHAPE_CONTEXT_OUTER_RADIUS, SHAPE_CONTEXT_RADIUS_BINS + 1
    )
    radius_bins = np.clip(np.searchsorted(edges, radii, side="right") - 1, 0, SHAPE_CONTEXT_RADIUS_BINS - 1)
    angles = np.mod(np.arctan2(offsets[..., 1], offsets[..., 0]), 2.0 * np.pi)
    angle_bins = np.minimum(
        (angles / (2.0 * np.pi / SHAPE_CONTEXT_ANGLE_BINS)).astype(np.intp), SHAPE_CONTEXT_ANGLE_BINS - 1
    )
    bin_count = SHAPE_CONTEXT_RADIUS_BINS * SHAPE_CONTEXT_ANGLE_BINS
    flat = np.arange(size)[:, None] * bin_count + radius_bins * SHAPE_CONTEXT_ANGLE_BINS + angle_bins
    counts = np.bincount(flat[others], minlength=size * bin_count).reshape(size, bin_count)
    return np.asarray(counts / (size - 1), dtype=np.float64)


def chi_square_cost(left: FloatArray, right: FloatArray) -> FloatArray:
    """
    Chi-square statistic `1/2 sum_b (h_i(b) - g_j(b))^2 / (h_i(b) + g_j(b))` between all pairs of histogram rows.
    Bins that are empty in both histograms are skipped.
    """
    cost = np.zeros((left.shape[0], right.shape[0]), dtype=np.float64)
    for column in range(left.shape[1]):
        total = left[:, column, None] + right[None, :, column]
        difference = left[:, column, None] - right[None, :, column]
        np.divide(difference**2, total, out=difference, where=total > 0.0)
        difference[total <= 0.0] = 0.0
        cost += difference
    return np.asarray(0.5 * cost, dtype=np.float64)


def shape_context_cost(source: PointSet, target: PointSet) -> UnaryCost:
    """
    Shape context unary cost between the nodes of two planar point sets.
    """
    cost = chi_square_cost(shape_context_histograms(source), shape_context_histograms(target))
    return UnaryCost(np.clip(cost, 0.0, None))
