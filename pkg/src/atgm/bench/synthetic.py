"""
Bench Module: seeded synthetic point set pairs

Inliers are standard normal points in the plane. The target holds a noisy copy of every inlier plus standard normal
outliers, in a seeded random order. All randomness comes from an SFC64 generator seeded with the instance seed.
"""

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from ..core.assignment import Matching
from ..core.geometry import PointSet
from .constants import SYNTHETIC_DIMENSION


@dataclass(frozen=True)
class SyntheticSpec:
    """
    Parameters of one synthetic instance; `sigma` is the standard deviation of the deformation noise.
    """

    n_in: int
    n_out: int = 0
    sigma: float = 0.0
    seed: int = 0

    def __post_init__(self) -> None:
        if self.n_in < 2:
            raise ValueError("n_in must be at least 2")
        if self.n_out < 0:
            raise ValueError("n_out must be nonnegative")
        if self.sigma < 0.0:
            raise ValueError("sigma must be nonnegative")
        if self.seed < 0:
            raise ValueError("seed must be nonnegative")


class SyntheticInstance(NamedTuple):
    """
    Source points, target points and the ground truth matching of the source into the target.
    """

    source: PointSet
    target: PointSet
    ground_truth: Matching


def make_rng(seed: int) -> np.random.Generator:
    """
    The generator used for all bench randomness.
    """
    return np.random.Generator(np.random.SFC64(seed))


def trial_seed(seed_base: int, cell: int, trial: int) -> int:
    """
    Seed of one trial, derived from the seed base and the cell and trial indices.
    """
    state = np.random.SeedSequence([seed_base, cell, trial]).generate_state(1, np.uint64)
    return int(state[0])


def gen_synthetic(spec: SyntheticSpec) -> SyntheticInstance:
    """
    Draw the synthetic instance described by `spec`.
    """
    rng = make_rng(spec.seed)
    inliers = rng.standard_normal((spec.n_in, SYNTHETIC_DIMENSION))
    deformed = inliers + spec.sigma * rng.standard_normal((spec.n_in, SYNTHETIC_DIMENSION))
    outliers = rng.standard_normal((spec.n_out, SYNTHETIC_DIMENSION))
    order = rng.permutation(spec.n_in + spec.n_out)
    target = np.vstack([deformed, outliers])[order]
    positions = np.argsort(order)
    return SyntheticInstance(
        PointSet(inliers), PointSet(target), Matching(positions[: spec.n_in], spec.n_in + spec.n_out)
    )
