"""
FW Module: active sets of fully corrective convex solves
"""

from typing import List, Optional

import numpy as np

from ..objectives.types import Objective, ObjectiveEval
from ..utils import frobenius_inner
from ..utils.types import FloatArray, IntArray
from .constants import QUADRATIC_CURVATURE_FLOOR


class ActiveSet:
    """
    An iterate written as a convex combination of atoms: the starting iterate and linear assignment vertices.

    For a quadratic objective `g` with Hessian `H` the restriction to the atoms is
    `g(sum_k w_k A_k) = w^T Q w / 2 + b^T w + g(0)` with `Q_kl = <A_k, H A_l>` and `b_k = <grad g(0), A_k>`.
    Both are assembled from gradients as `H A = grad g(A) - grad g(0)`. Vertex atoms are stored as the target index
    of every source node; the starting iterate is stored densely and marked by `None`.
    """

    def __init__(self, objective: Objective, initial: FloatArray, at_initial: ObjectiveEval):
        m, n = objective.shape
        self.rows = np.arange(m)
        self.shape = (m, n)
        self.origin = objective.reduced(np.zeros((m, n))).gradient
        self.initial = np.array(initial, dtype=np.float64)
        self.atoms: List[Optional[IntArray]] = [None]
        self.weights = np.ones(1)
        self.gram = np.array([[frobenius_inner(at_initial.gradient - self.origin, self.initial)]])
        self.linear = np.array([frobenius_inner(self.origin, self.initial)])

    def __len__(self) -> int:
        return len(self.atoms)

    def _pair(self, curved: FloatArray, atom: Optional[IntArray]) -> float:
        if atom is None:
            return frobenius_inner(curved, self.initial)
        return float(curved[self.rows, atom].sum())

    def add(self, vertex: IntArray, at_vertex: ObjectiveEval) -> int:
        """
        Index of the atom for `vertex`, appended with weight 0 unless it is already present.
        """
        for index, atom in enumerate(self.atoms):
            if atom is not None and np.array_equal(atom, vertex):
                return index
        curved = at_vertex.gradient - self.origin
        column = np.array([self._pair(curved, atom) for atom in self.atoms])
        diagonal = np.array([[self._pair(curved, vertex)]])
        self.gram = np.block([[self.gram, column[:, None]], [column[None, :], diagonal]])
        self.linear = np.append(self.linear, self._pair(self.origin, vertex))
        self.weights = np.append(self.weights, 0.0)
        self.atoms.append(np.array(vertex, dtype=np.intp))
        return len(self.atoms) - 1

    def move(self, index: int, step: float) -> None:
        """
        Move a fraction `step` of the weight onto atom `index`.
        """
        self.weights *= 1.0 - step
        self.weights[index] += step

    def correct(self, tolerance: float, max_iterations: int) -> int:
        """
        Minimize the objective over the convex hull of the atoms by pairwise steps with exact line search, until no
        atom in use has a directional derivative more than `tolerance` above the best atom. Atoms without weight
        are dropped afterwards. Returns the number of steps.
        """
        slopes = self.gram @ self.weights + self.linear
        steps = 0
        while steps < max_iterations:
            toward = int(np.argmin(slopes))
            away = int(np.argmax(np.where(self.weights > 0.0, slopes, -np.inf)))
            gap = float(slopes[away] - slopes[toward])
            if gap <= tolerance:
                break
            available = float(self.weights[away])
            curvature = float(self.gram[toward, toward] + self.gram[away, away] - 2.0 * self.gram[toward, away])
            step = available if curvature <= QUADRATIC_CURVATURE_FLOOR else min(available, gap / curvature)
            self.weights[toward] += step
            self.weights[away] = 0.0 if step >= available else available - step
            slopes += step * (self.gram[:, toward] - self.gram[:, away])
            steps += 1
        self._prune()
        return steps

    def _prune(self) -> None:
        keep = np.flatnonzero(self.weights > 0.0)
        self.atoms = [self.atoms[index] for index in keep]
        self.weights = self.weights[keep] / self.weights[keep].sum()
        self.gram = self.gram[np.ix_(keep, keep)]
        self.linear = self.linear[keep]

    def matrix(self) -> FloatArray:
        """
        The iterate `sum_k w_k A_k`.
        """
        matrix = np.zeros(self.shape)
        for weight, atom in zip(self.weights, self.atoms):
            if atom is None:
                matrix += weight * self.initial
            else:
                matrix[self.rows, atom] += weight
        return matrix
