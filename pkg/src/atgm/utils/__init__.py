"""
Utilities.
"""

from typing import List, Optional

import numpy as np
from scipy.spatial.distance import cdist

from .types import FloatArray


def frobenius_inner(left: FloatArray, right: FloatArray) -> float:
    """
    Entrywise inner product `<A, B> = sum_ij A_ij B_ij` of two equally shaped matrices.
    """
    return float(np.einsum("ij,ij->", left, right))


def pairwise_distances(left: FloatArray, right: Optional[FloatArray] = None) -> FloatArray:
    """
    Euclidean distance matrix between the rows of `left` and the rows of `right` (or `left` itself).
    """
    other = left if right is None else right
    return np.asarray(cdist(left, other, metric="euclidean"), dtype=np.float64)


def parse_number_list(text: str) -> List[float]:
    """
    Parse a comma separated list of numbers such as `"0.02,0.04, 0.06"`. Empty items are ignored.
    """
    items = [item.strip() for item in text.split(",")]
    return [float(item) for item in items if item]


__all__ = [
    frobenius_inner.__name__,
    pairwise_distances.__name__,
    parse_number_list.__name__,
]
