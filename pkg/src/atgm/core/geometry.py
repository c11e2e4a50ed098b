"""
Core Module: point sets, normalization and the transformation map
"""

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from ..utils.types import FloatArray, IntArray
from .assignment import SoftAssignment, as_matrix
from .exceptions import DegenerateInputException, DimensionMismatchException


@dataclass(frozen=True, eq=False)
class PointSet:
    """
    Ordered set of `m` points in `d` dimensions, stored row-wise in an immutable `(m, d)` array.
    """

    coords: FloatArray

    def __post_init__(self) -> None:
        coords = np.array(self.coords, dtype=np.float64, copy=True)
        if coords.ndim == 1:
            coords = coords.reshape(-1, 1)
        if coords.ndim != 2 or coords.shape[0] < 1 or coords.shape[1] < 1:
            raise DimensionMismatchException(f"a point set needs shape (m, d) with m, d >= 1, got {coords.shape}")
        if not np.all(np.isfinite(coords)):
            raise DegenerateInputException("point coordinates must be finite")
        coords.flags.writeable = False
        object.__setattr__(self, "coords", coords)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[float]]) -> "PointSet":
        """
        Build a point set from a sequence of coordinate rows.
        """
        return cls(np.asarray(rows, dtype=np.float64))

    @property
    def size(self) -> int:
        """Number of points `m`."""
        return int(self.coords.shape[0])

    @property
    def dim(self) -> int:
        """Dimension `d` of every point."""
        return int(self.coords.shape[1])

    def __len__(self) -> int:
        return self.size

    def subset(self, indices: Union[Sequence[int], IntArray]) -> "PointSet":
        """
        Return the point set made of the rows at `indices`, in that order.
        """
        return PointSet(self.coords[np.asarray(indices, dtype=np.intp)])


def normalize_points(points: PointSet) -> PointSet:
    """
    Shift the point set to the origin and scale it uniformly by its largest per-axis range so that every coordinate
    lies in [0, 1]. The aspect ratio is preserved.
    """
    if points.size < 2:
        raise DegenerateInputException("normalization needs at least two points")
    lower = points.coords.min(axis=0)
    extent = points.coords.max(axis=0) - lower
    scale = float(extent.max())
    if scale <= 0.0:
        raise DegenerateInputException("cannot normalize a point set whose points are all identical")
    normalized = (points.coords - lower) / scale
    # guard against 1 + ulp after the division
    return PointSet(np.clip(normalized, 0.0, 1.0))


def transform(assignment: Union[SoftAssignment, FloatArray], target: PointSet) -> PointSet:
    """
    Transformation map `X_bar = P Y`: every source node is sent to the convex combination of the target nodes given
    by its row of `P`.
    """
    matrix = as_matrix(assignment)
    if matrix.shape[1] != target.size:
        raise DimensionMismatchException(
            f"assignment has {matrix.shape[1]} columns but the target point set has {target.size} points"
        )
    return PointSet(matrix @ target.coords)
