"""
Pipeline Module: ratio test outlier removal on the target point set
"""

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from ..core.exceptions import DimensionMismatchException
from ..core.geometry import PointSet
from ..utils import pairwise_distances
from ..utils.logging import get_logger
from ..utils.types import IntArray, RemovalRule

_logger = get_logger(__name__)


@dataclass(frozen=True, eq=False)
class RemovalState:
    """
    Sorted indices of the retained target nodes and the number of retained nodes after every removal.
    """

    kept: IntArray
    history: Tuple[int, ...] = ()

    def __post_init__(self) -> None:
        kept = np.unique(np.asarray(self.kept, dtype=np.intp))
        if kept.size != np.asarray(self.kept).size:
            raise ValueError("retained indices must be unique")
        kept.flags.writeable = False
        object.__setattr__(self, "kept", kept)

    @classmethod
    def full(cls, n: int) -> "RemovalState":
        """
        State retaining all `n` target nodes.
        """
        return cls(np.arange(n), (n,))

    @property
    def count(self) -> int:
        """Number of retained nodes."""
        return int(self.kept.size)

    def advance(self, kept: IntArray) -> "RemovalState":
        """
        The state retaining `kept`, indices into the full target set, after one more ratio test.
        """
        state = RemovalState(kept)
        return RemovalState(state.kept, self.history + (state.count,))


def remove_outliers(
    transformed: PointSet, target: PointSet, ratio_k: float, m: int, rule: RemovalRule = "any"
) -> RemovalState:
    """
    Ratio test on the distances `d_ij = ||X_bar_i - Y_j||`: for every source node `i` a target node passes if
    `d_ij <= ratio_k * min_j d_ij`. With rule `any` a target node is retained if it passes for at least one source
    node, with rule `all` only if it passes for every source node.

    If fewer than `m` nodes are retained, removed nodes are added back in increasing order of `min_i d_ij` until
    exactly `m` remain.
    """
    if transformed.dim != target.dim:
        raise DimensionMismatchException(f"cannot compare {transformed.dim}-d with {target.dim}-d points")
    if target.size < m:
        raise DimensionMismatchException(f"cannot retain {m} of {target.size} target nodes")
    if ratio_k <= 0.0:
        raise ValueError("ratio_k must be positive")
    distances = pairwise_distances(transformed.coords, target.coords)
    passes = distances <= ratio_k * distances.min(axis=1, keepdims=True)
    retained = passes.any(axis=0) if rule == "any" else passes.all(axis=0)
    count = int(retained.sum())
    if count < m:
        removed = np.flatnonzero(~retained)
        closest = distances.min(axis=0)[removed]
        refill = removed[np.argsort(closest, kind="stable")[: m - count]]
        retained[refill] = True
        _logger.debug("ratio test kept %d nodes, refilled %d", count, m - count)
    kept = np.flatnonzero(retained)
    _logger.debug("retained %d of %d target nodes", kept.size, target.size)
    return RemovalState(kept, (int(kept.size),))
