"""
The full matching pipeline with outlier removal
"""

from .config import AtgmConfig
from .matcher import AtgmDiagnostics, AtgmResult, atgm, filter_outliers, post_discretize
from .removal import RemovalState, remove_outliers

__all__ = [
    "AtgmConfig",
    "AtgmDiagnostics",
    "AtgmResult",
    "RemovalState",
    "atgm",
    "filter_outliers",
    "post_discretize",
    "remove_outliers",
]
