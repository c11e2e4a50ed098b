"""
Spectral matching baseline
"""

from .spectral import (
    SpectralResult,
    brute_force_qap,
    greedy_readout,
    matching_vector,
    power_iteration,
    spectral_match,
)

__all__ = [
    "SpectralResult",
    "brute_force_qap",
    "greedy_readout",
    "matching_vector",
    "power_iteration",
    "spectral_match",
]
