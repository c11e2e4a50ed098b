"""
CLI: the atgm command line application
"""

from .app import AtgmApp

__all__ = [
    "AtgmApp",
]
