"""
Bench: seeded synthetic instances, accuracy and sparsity metrics and experiment sweeps.
"""

from .metrics import TrialResult, accuracy, normalized_rows, sparsity_index
from .presets import PRESETS, Preset, build_preset
from .sweep import (
    TRIAL_COLUMNS,
    CellSummary,
    SweepCell,
    SweepResult,
    TrialRow,
    pivot_table,
    run_sweep,
    run_trial,
    summary_document,
    write_pivot_csv,
    write_summary_json,
    write_trials_csv,
)
from .synthetic import SyntheticInstance, SyntheticSpec, gen_synthetic, make_rng, trial_seed

__all__ = [
    "TrialResult",
    "accuracy",
    "normalized_rows",
    "sparsity_index",
    "PRESETS",
    "Preset",
    "build_preset",
    "TRIAL_COLUMNS",
    "CellSummary",
    "SweepCell",
    "SweepResult",
    "TrialRow",
    "pivot_table",
    "run_sweep",
    "run_trial",
    "summary_document",
    "write_pivot_csv",
    "write_summary_json",
    "write_trials_csv",
    "SyntheticInstance",
    "SyntheticSpec",
    "gen_synthetic",
    "make_rng",
    "trial_seed",
]
