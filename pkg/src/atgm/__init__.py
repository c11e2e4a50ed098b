"""
The atgm project: point set matching with adaptively transformed graphs.
"""

from .core import Matching, PointSet, SoftAssignment
from .pipeline import AtgmConfig, AtgmResult, atgm, filter_outliers

__all__ = [
    "Matching",
    "PointSet",
    "SoftAssignment",
    "AtgmConfig",
    "AtgmResult",
    "atgm",
    "filter_outliers",
]
