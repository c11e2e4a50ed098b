"""
Core Module: edge sets, edge weights, graph instances and Laplacians
"""

import warnings
from dataclasses import dataclass
from typing import Iterable, Optional, Tuple, Union

import numpy as np
from scipy.cluster.vq import kmeans2

from ..utils.logging import get_logger
from ..utils.types import BoolArray, FloatArray, IntArray
from .constants import PRUNE_MAX_ITERATIONS, PRUNE_VARIANCE_FLOOR
from .exceptions import DegenerateInputException, DimensionMismatchException, ShapeException
from .geometry import PointSet

_logger = get_logger(__name__)


@dataclass(frozen=True, eq=False)
class EdgeSet:
    """
    Undirected edges over the nodes `0..size-1`, stored as an `(M, 2)` array of pairs `(a, b)` with `a < b` in
    lexicographic order.
    """

    pairs: IntArray
    size: int

    def __post_init__(self) -> None:
        pairs = np.array(self.pairs, dtype=np.intp, copy=True).reshape(-1, 2)
        if self.size < 1:
            raise ShapeException("an edge set needs at least one node")
        if np.any(pairs[:, 0] == pairs[:, 1]):
            raise DegenerateInputException("edge sets must not contain self-loops")
        if np.any(pairs < 0) or np.any(pairs >= self.size):
            raise DimensionMismatchException(f"edge indices must lie in [0, {self.size})")
        pairs = np.sort(pairs, axis=1)
        unique = np.unique(pairs, axis=0)
        if unique.shape[0] != pairs.shape[0]:
            raise DegenerateInputException("edge sets must not contain duplicate edges")
        unique.flags.writeable = False
        object.__setattr__(self, "pairs", unique)

    @classmethod
    def from_pairs(cls, pairs: Iterable[Tuple[int, int]], size: int) -> "EdgeSet":
        """
        Build an edge set from an iterable of index pairs.
        """
        return cls(np.array(list(pairs), dtype=np.intp).reshape(-1, 2), size)

    @classmethod
    def complete(cls, size: int) -> "EdgeSet":
        """
        All `size (size - 1) / 2` unordered pairs.
        """
        rows, cols = np.triu_indices(size, k=1)
        return cls(np.column_stack([rows, cols]), size)

    @property
    def count(self) -> int:
        """Number of edges `M`."""
        return int(self.pairs.shape[0])

    def __len__(self) -> int:
        return self.count

    def as_tuples(self) -> set[Tuple[int, int]]:
        """
        The edges as a set of `(a, b)` tuples with `a < b`.
        """
        return {(int(a), int(b)) for a, b in self.pairs}

    def mask(self) -> BoolArray:
        """
        Symmetric boolean adjacency matrix of the edge set.
        """
        adjacency = np.zeros((self.size, self.size), dtype=np.bool_)
        adjacency[self.pairs[:, 0], self.pairs[:, 1]] = True
        adjacency[self.pairs[:, 1], self.pairs[:, 0]] = True
        return adjacency


@dataclass(frozen=True, eq=False)
class EdgeWeights:
    """
    Symmetric, nonnegative `(m, m)` edge weight matrix `S` with zero diagonal.
    """

    matrix: FloatArray

    def __post_init__(self) -> None:
        matrix = np.array(self.matrix, dtype=np.float64, copy=True)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise ShapeException(f"edge weights need a square matrix, got shape {matrix.shape}")
        if not np.all(np.isfinite(matrix)):
            raise DegenerateInputException("edge weights must be finite")
        if np.any(matrix < 0.0):
            raise DegenerateInputException("edge weights must be nonnegative")
        if np.any(np.diag(matrix) != 0.0):
            raise DegenerateInputException("edge weights must have a zero diagonal")
        if not np.array_equal(matrix, matrix.T):
            raise DegenerateInputException("edge weights must be symmetric")
        matrix.flags.writeable = False
        object.__setattr__(self, "matrix", matrix)

    @property
    def size(self) -> int:
        """Number of nodes `m`."""
        return int(self.matrix.shape[0])

    def support(self) -> EdgeSet:
        """
        The edges carrying a positive weight.
        """
        rows, cols = np.nonzero(np.triu(self.matrix, k=1))
        return EdgeSet(np.column_stack([rows, cols]), self.size)


@dataclass(frozen=True, eq=False)
class GraphInstance:
    """
    A geometric graph: node coordinates, edge set and edge weights whose support lies inside the edge set.
    """

    points: PointSet
    edges: EdgeSet
    weights: EdgeWeights

    def __post_init__(self) -> None:
        if self.edges.size != self.points.size or self.weights.size != self.points.size:
            raise DimensionMismatchException(
                f"graph with {self.points.size} points got {self.edges.size}-node edges and "
                f"{self.weights.size}-node weights"
            )
        if np.any((self.weights.matrix > 0.0) & ~self.edges.mask()):
            raise DegenerateInputException("edge weights are positive outside of the edge set")

    @property
    def size(self) -> int:
        """Number of nodes `m`."""
        return self.points.size


def edge_lengths(edges: EdgeSet, points: PointSet) -> FloatArray:
    """
    Euclidean length of every edge, in the order of `edges.pairs`.
    """
    if edges.size != points.size:
        raise DimensionMismatchException(f"edge set over {edges.size} nodes used with {points.size} points")
    vectors = points.coords[edges.pairs[:, 0]] - points.coords[edges.pairs[:, 1]]
    return np.asarray(np.linalg.norm(vectors, axis=1), dtype=np.float64)


def unit_weights(edges: EdgeSet) -> EdgeWeights:
    """
    Weight 1 on every edge of `edges`, 0 elsewhere.
    """
    return EdgeWeights(edges.mask().astype(np.float64))


def inverse_length_graph(points: PointSet, edges: Optional[EdgeSet] = None) -> GraphInstance:
    """
    Graph on `points` with `S_ab = 1 / ||X_a - X_b||` on every edge (the complete graph if `edges` is omitted).
    """
    if edges is None:
        edges = EdgeSet.complete(points.size)
    lengths = edge_lengths(edges, points)
    if np.any(lengths <= 0.0):
        raise DegenerateInputException("inverse length weights are undefined for duplicate points")
    matrix = np.zeros((points.size, points.size), dtype=np.float64)
    matrix[edges.pairs[:, 0], edges.pairs[:, 1]] = 1.0 / lengths
    matrix[edges.pairs[:, 1], edges.pairs[:, 0]] = 1.0 / lengths
    return GraphInstance(points, edges, EdgeWeights(matrix))


def complete_graph(points: PointSet) -> GraphInstance:
    """
    Fully connected graph on `points` weighted by inverse edge length.
    """
    return inverse_length_graph(points)


def prune_edges_kmeans(edges: EdgeSet, points: PointSet) -> EdgeSet:
    """
    Split the edges into a short and a long group by 1-d 2-means on their lengths and drop the long group.

    The centroids start at the shortest and the longest length. If the lengths (almost) do not vary all edges are
    kept.
    """
    if edges.count == 0:
        raise DegenerateInputException("cannot prune an empty edge set")
    lengths = edge_lengths(edges, points)
    if float(np.var(lengths)) < PRUNE_VARIANCE_FLOOR:
        return edges
    initial = np.array([[lengths.min()], [lengths.max()]])
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        centroids, labels = kmeans2(
            lengths.reshape(-1, 1), initial, iter=PRUNE_MAX_ITERATIONS, minit="matrix", missing="warn"
        )
    long_cluster = int(np.argmax(centroids[:, 0]))
    kept = edges.pairs[labels != long_cluster]
    _logger.debug("pruned %d of %d edges", edges.count - kept.shape[0], edges.count)
    return EdgeSet(kept, edges.size)


def laplacian(weights: Union[EdgeWeights, FloatArray]) -> FloatArray:
    """
    Graph Laplacian `L = diag(S 1) - S`.
    """
    matrix = weights.matrix if isinstance(weights, EdgeWeights) else np.asarray(weights, dtype=np.float64)
    return np.diag(matrix.sum(axis=1)) - matrix
