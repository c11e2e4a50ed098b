"""
Bench Module: accuracy and sparsity metrics
"""

from dataclasses import dataclass, field
from typing import List, Union

import numpy as np

from ..core.assignment import Matching, SoftAssignment, as_matrix, row_sparsity
from ..core.exceptions import DimensionMismatchException
from ..utils.types import FloatArray


def accuracy(found: Matching, ground_truth: Matching) -> float:
    """
    Fraction of source nodes matched to their ground truth target.
    """
    if found.size != ground_truth.size:
        raise DimensionMismatchException(
            f"matchings of {found.size} and {ground_truth.size} source nodes cannot be compared"
        )
    return float(np.mean(found.assignment == ground_truth.assignment))


def sparsity_index(assignment: Union[SoftAssignment, FloatArray], threshold: float) -> float:
    """
    Fraction of rows holding an entry of at least `threshold`.
    """
    return row_sparsity(as_matrix(assignment), threshold)


def normalized_rows(scores: FloatArray) -> FloatArray:
    """
    Scale every row of a nonnegative score matrix to sum 1; all-zero rows stay zero.
    """
    totals = scores.sum(axis=1, keepdims=True)
    return np.divide(scores, totals, out=np.zeros_like(scores), where=totals > 0.0)


@dataclass
class TrialResult:
    """
    Outcome of one trial.
    """

    accuracy: float
    sparsity: float
    wall_time: float
    stage_objectives: List[float] = field(default_factory=list)

    def __post_init__(self) -> None:
        if not 0.0 <= self.accuracy <= 1.0 or not 0.0 <= self.sparsity <= 1.0:
            raise ValueError("accuracy and sparsity must lie in [0, 1]")
