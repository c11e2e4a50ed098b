"""
Core Module: planar Delaunay triangulation by incremental Bowyer-Watson insertion
"""

from collections import Counter
from typing import List, Tuple

import numpy as np

from ..utils import pairwise_distances
from ..utils.types import BoolArray, FloatArray, IntArray
from .constants import COLLINEAR_TOLERANCE, INCIRCLE_TOLERANCE
from .exceptions import DegenerateInputException, UnsupportedDimensionException
from .geometry import PointSet
from .graph import EdgeSet

__all__ = ["delaunay_edges", "delaunay_triangles", "incircle", "orientation"]


def incircle(first: FloatArray, second: FloatArray, third: FloatArray, query: FloatArray) -> FloatArray:
    """
    In-circle predicate for counter-clockwise triangles `(first, second, third)`, broadcast over leading axes.
    Positive iff `query` lies strictly inside the circumcircle, zero if it is cocircular.
    """
    ax, ay = first[..., 0] - query[..., 0], first[..., 1] - query[..., 1]
    bx, by = second[..., 0] - query[..., 0], second[..., 1] - query[..., 1]
    cx, cy = third[..., 0] - query[..., 0], third[..., 1] - query[..., 1]
    return np.asarray(
        (ax * ax + ay * ay) * (bx * cy - cx * by)
        - (bx * bx + by * by) * (ax * cy - cx * ay)
        + (cx * cx + cy * cy) * (ax * by - bx * ay),
        dtype=np.float64,
    )


def _validate(points: PointSet) -> FloatArray:
    """
    Check that `points` can be triangulated and return them rescaled to the unit box.
    """
    if points.dim != 2:
        raise UnsupportedDimensionException(f"Delaunay triangulation needs planar points, got d={points.dim}")
    if points.size < 3:
        raise DegenerateInputException(f"Delaunay triangulation needs at least 3 points, got {points.size}")
    coords = points.coords
    lower = coords.min(axis=0)
    scale = float((coords.max(axis=0) - lower).max())
    if scale <= 0.0:
        raise DegenerateInputException("cannot triangulate identical points")
    unit = (coords - lower) / scale
    distances = pairwise_distances(unit)
    np.fill_diagonal(distances, np.inf)
    if float(distances.min()) <= 0.0:
        raise DegenerateInputException("cannot triangulate duplicate points")
    singular_values = np.linalg.svd(unit - unit.mean(axis=0), compute_uv=False)
    if float(singular_values[-1]) <= COLLINEAR_TOLERANCE:
        raise DegenerateInputException("cannot triangulate collinear points")
    return np.asarray(unit, dtype=np.float64)


def _cavity_boundary(bad: IntArray) -> List[Tuple[int, int]]:
    """
    Directed boundary edges of the union of the bad triangles. Interior edges appear twice (once per orientation).
    """
    directed = [(int(tri[k]), int(tri[(k + 1) % 3])) for tri in bad for k in range(3)]
    undirected = Counter(frozenset(edge) for edge in directed)
    return [edge for edge in directed if undirected[frozenset(edge)] == 1]


def orientation(first: FloatArray, second: FloatArray, query: FloatArray) -> FloatArray:
    """
    Twice the signed area of `(first, second, query)`, broadcast over leading axes. Positive iff `query` lies to
    the left of the line from `first` to `second`.
    """
    return np.asarray(
        (second[..., 0] - first[..., 0]) * (query[..., 1] - first[..., 1])
        - (second[..., 1] - first[..., 1]) * (query[..., 0] - first[..., 0]),
        dtype=np.float64,
    )


def _in_circumcircle(vertices: FloatArray, triangles: IntArray, query: FloatArray, ghost: int) -> BoolArray:
    """
    Triangles whose circumcircle strictly contains `query`. A triangle `(u, v, ghost)` with the vertex at infinity
    has the open half-plane left of `u -> v` plus the open segment between `u` and `v` as its circumcircle.
    """
    corners = vertices[triangles]
    first, second = corners[:, 0], corners[:, 1]
    finite = incircle(first, second, corners[:, 2], query) > INCIRCLE_TOLERANCE
    side = orientation(first, second, query)
    between = (np.einsum("ij,ij->i", query - first, second - first) > 0.0) & (
        np.einsum("ij,ij->i", query - second, first - second) > 0.0
    )
    infinite = (side > INCIRCLE_TOLERANCE) | ((np.abs(side) <= INCIRCLE_TOLERANCE) & between)
    return np.asarray(np.where(triangles[:, 2] == ghost, infinite, finite), dtype=np.bool_)


def _ghost_last(triangle: Tuple[int, int, int], ghost: int) -> Tuple[int, int, int]:
    first, second, third = triangle
    if first == ghost:
        return second, third, first
    if second == ghost:
        return third, first, second
    return triangle


def _initial_triangle(unit: FloatArray) -> Tuple[int, int, int]:
    """
    Counter-clockwise seed triangle on points 0 and 1 and the point farthest from their line.
    """
    sides = orientation(unit[0], unit[1], unit)
    third = int(np.argmax(np.abs(sides)))
    return (0, 1, third) if sides[third] > 0.0 else (1, 0, third)


def delaunay_triangles(points: PointSet) -> IntArray:
    """
    Counter-clockwise triangles `(k, 3)` of the Delaunay triangulation of planar `points`.

    The super triangle is symbolic: a single vertex at infinity closes every convex hull edge `(u, v)` with a
    triangle `(v, u, inf)`. Points other than the seed triangle are inserted in index order. A point that is
    cocircular with an existing triangle (in-circle determinant within tolerance in unit-box coordinates) leaves that
    triangle in place.
    """
    unit = _validate(points)
    m = points.size
    vertices = np.vstack([unit, np.zeros((1, 2))])
    first, second, third = _initial_triangle(unit)
    triangles = np.array(
        [[first, second, third], [second, first, m], [third, second, m], [first, third, m]], dtype=np.intp
    )

    for index in (k for k in range(m) if k not in (first, second, third)):
        inside = _in_circumcircle(vertices, triangles, vertices[index], m)
        fan = [_ghost_last((start, end, index), m) for start, end in _cavity_boundary(triangles[inside])]
        triangles = np.vstack([triangles[~inside], np.array(fan, dtype=np.intp).reshape(-1, 3)])

    return np.asarray(triangles[triangles[:, 2] != m], dtype=np.intp)


def delaunay_edges(points: PointSet) -> EdgeSet:
    """
    Edge set of the Delaunay triangulation of planar `points`.
    """
    triangles = delaunay_triangles(points)
    edges = {
        (min(int(tri[k]), int(tri[(k + 1) % 3])), max(int(tri[k]), int(tri[(k + 1) % 3])))
        for tri in triangles
        for k in range(3)
    }
    return EdgeSet.from_pairs(sorted(edges), points.size)
