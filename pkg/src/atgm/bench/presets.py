"""
Bench Module: named sweep grids
"""

from dataclasses import replace
from typing import Callable, Dict, List, NamedTuple, Optional

from ..pipeline.config import AtgmConfig
from .constants import TABLE1_INLIERS, TABLE1_NOISE, TABLE1_OUTLIER_RATIOS
from .sweep import SweepCell


class Preset(NamedTuple):
    """
    Cells of a named grid and the parameters spanning the rows and columns of its pivot table.
    """

    cells: List[SweepCell]
    row_key: str
    column_key: str


def _sizes(sizes: tuple[int, ...], max_n: Optional[int]) -> List[int]:
    return [size for size in sizes if max_n is None or size <= max_n]


def _table1_noise(config: AtgmConfig, max_n: Optional[int]) -> Preset:
    cells = [
        SweepCell(n_in, 0, sigma, config=config) for n_in in _sizes(TABLE1_INLIERS, max_n) for sigma in TABLE1_NOISE
    ]
    return Preset(cells, "n_in", "sigma")


def _table1_outliers(config: AtgmConfig, max_n: Optional[int]) -> Preset:
    cells = [
        SweepCell(n_in, round(ratio * n_in), 0.0, config=config)
        for n_in in _sizes(TABLE1_INLIERS, max_n)
        for ratio in TABLE1_OUTLIER_RATIOS
    ]
    return Preset(cells, "n_in", "outlier_ratio")


def _runtime_inliers(config: AtgmConfig, max_n: Optional[int]) -> Preset:
    cells = [SweepCell(n_in, 0, 0.2, config=config) for n_in in _sizes(tuple(range(10, 101, 10)), max_n)]
    return Preset(cells, "sigma", "n_in")


def _runtime_outliers(config: AtgmConfig, max_n: Optional[int]) -> Preset:
    n_in = 100 if max_n is None else min(100, max_n)
    cells = [SweepCell(n_in, n_out, 0.05, config=config) for n_out in range(10, 101, 10)]
    return Preset(cells, "n_in", "n_out")


def _ablation(config: AtgmConfig, _max_n: Optional[int]) -> Preset:
    cells = [
        SweepCell(20, 10, 0.02, config=replace(config, stages="f-only"), label="F"),
        SweepCell(20, 10, 0.02, config=replace(config, stages="f-g"), label="F&G"),
    ]
    return Preset(cells, "n_in", "label")


def _preprocess(config: AtgmConfig, _max_n: Optional[int]) -> Preset:
    cells = [
        SweepCell(20, 10, 0.02, "spectral", False, config, "SM"),
        SweepCell(20, 10, 0.02, "spectral", True, config, "SM+removal"),
    ]
    return Preset(cells, "n_in", "label")


PRESETS: Dict[str, Callable[[AtgmConfig, Optional[int]], Preset]] = {
    "table1-noise": _table1_noise,
    "table1-outliers": _table1_outliers,
    "runtime-inliers": _runtime_inliers,
    "runtime-outliers": _runtime_outliers,
    "ablation": _ablation,
    "preprocess": _preprocess,
}


def build_preset(name: str, max_n: Optional[int] = None, config: Optional[AtgmConfig] = None) -> Preset:
    """
    Build the named grid. `max_n` drops cells with more inliers than `max_n` (the outlier runtime grid caps its
    inlier count instead) and `config` is the matcher configuration of every cell.

    - `table1-noise`: n_in in 100, 300, 500, 1000 against sigma in 0.02 .. 0.10, no outliers
    - `table1-outliers`: outlier ratios 0.2 .. 1.0 of n_in, no noise
    - `runtime-inliers`: n_in = 10, 20, .., 100 with sigma = 0.2
    - `runtime-outliers`: n_in = 100 with n_out = 10, 20, .., 100 and sigma = 0.05
    - `ablation`: 20 inliers and 10 outliers, F-only against F&G
    - `preprocess`: spectral matching on 20 inliers and 10 outliers with and without removal pre-processing
    """
    if name not in PRESETS:
        raise ValueError(f"unknown preset '{name}', expected one of {', '.join(PRESETS)}")
    if max_n is not None and max_n < 2:
        raise ValueError("max_n must be at least 2")
    return PRESETS[name](AtgmConfig() if config is None else config, max_n)
