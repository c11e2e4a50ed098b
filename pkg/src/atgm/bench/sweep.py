"""
Bench Module: seeded experiment sweeps over synthetic instances

A sweep is a list of cells, each fixing the instance parameters, the matching method and its configuration. Every
trial of every cell draws its own instance from a seed derived from the seed base and the cell and trial indices, so
trials are independent and the results do not depend on how they are scheduled.
"""

import csv
import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional, Sequence, TextIO, Tuple

import numpy as np

from ..baseline.spectral import spectral_match
from ..core.assignment import Matching
from ..core.exceptions import AtgmException
from ..core.geometry import PointSet
from ..objectives.affinity import affinity_matrix
from ..pipeline.config import AtgmConfig
from ..pipeline.matcher import atgm, filter_outliers
from ..utils.logging import get_logger
from ..utils.types import Method
from .constants import SPARSITY_THRESHOLD, SPECTRAL_LENGTH_SCALE
from .metrics import TrialResult, accuracy, normalized_rows, sparsity_index
from .synthetic import SyntheticSpec, gen_synthetic, trial_seed

_logger = get_logger(__name__)

TRIAL_COLUMNS = (
    "cell",
    "label",
    "n_in",
    "n_out",
    "outlier_ratio",
    "sigma",
    "method",
    "removal_preprocess",
    "trial",
    "seed",
    "accuracy",
    "sparsity",
    "wall_time",
    "error",
)


@dataclass(frozen=True)
class SweepCell:
    """
    One grid cell: instance parameters, matching method, whether the removal rounds run as a pre-processing step and
    the matcher configuration (also used by the pre-processing).
    """

    # pylint: disable=too-many-instance-attributes

    n_in: int
    n_out: int = 0
    sigma: float = 0.0
    method: Method = "atgm"
    removal_preprocess: bool = False
    config: AtgmConfig = field(default_factory=AtgmConfig)
    label: str = ""

    def __post_init__(self) -> None:
        SyntheticSpec(self.n_in, self.n_out, self.sigma)
        if self.method not in ("atgm", "spectral"):
            raise ValueError(f"unknown method '{self.method}'")

    @property
    def outlier_ratio(self) -> float:
        """Outliers per inlier."""
        return self.n_out / self.n_in

    def spec(self, seed: int) -> SyntheticSpec:
        """
        The synthetic instance parameters of this cell with the given seed.
        """
        return SyntheticSpec(self.n_in, self.n_out, self.sigma, seed)

    def parameters(self) -> Dict[str, Any]:
        """
        The cell parameters as written to result files.
        """
        return {
            "label": self.label,
            "n_in": self.n_in,
            "n_out": self.n_out,
            "outlier_ratio": self.outlier_ratio,
            "sigma": self.sigma,
            "method": self.method,
            "removal_preprocess": self.removal_preprocess,
        }


@dataclass
class TrialRow:
    """
    Outcome of one trial; `result` is `None` if the trial failed with `error`.
    """

    cell: int
    trial: int
    seed: int
    parameters: Dict[str, Any]
    result: Optional[TrialResult] = None
    error: str = ""

    @property
    def failed(self) -> bool:
        """Whether the trial raised."""
        return self.result is None

    def as_row(self) -> Dict[str, Any]:
        """
        Flat mapping over `TRIAL_COLUMNS`; metric columns are empty for failed trials.
        """
        row: Dict[str, Any] = {"cell": self.cell, **self.parameters, "trial": self.trial, "seed": self.seed}
        if self.result is None:
            row.update(accuracy="", sparsity="", wall_time="")
        else:
            row.update(
                accuracy=self.result.accuracy, sparsity=self.result.sparsity, wall_time=self.result.wall_time
            )
        row["error"] = self.error
        return row


@dataclass
class CellSummary:
    """
    Means over the successful trials of one cell.
    """

    cell: int
    parameters: Dict[str, Any]
    trials: int
    succeeded: int
    accuracy: float
    sparsity: float
    wall_time: float

    @property
    def failed(self) -> bool:
        """A cell is marked failed if any of its trials failed."""
        return self.succeeded < self.trials

    def to_dict(self) -> Dict[str, Any]:
        """
        JSON compatible form; means of cells without successful trials are `None`.
        """

        def mean(value: float) -> Optional[float]:
            return None if math.isnan(value) else value

        return {
            "cell": self.cell,
            **self.parameters,
            "trials": self.trials,
            "succeeded": self.succeeded,
            "failed": self.failed,
            "accuracy": mean(self.accuracy),
            "sparsity": mean(self.sparsity),
            "wall_time": mean(self.wall_time),
        }


@dataclass
class SweepResult:
    """
    All trial rows of a sweep in (cell, trial) order.
    """

    cells: Tuple[SweepCell, ...]
    rows: List[TrialRow]
    seed_base: int = 0

    def summaries(self) -> List[CellSummary]:
        """
        Per-cell means, recomputed from the trial rows.
        """
        summaries = []
        for index, cell in enumerate(self.cells):
            rows = [row for row in self.rows if row.cell == index]
            results = [row.result for row in rows if row.result is not None]
            if results:
                means = [float(np.mean([getattr(result, name) for result in results])) for name in _METRICS]
            else:
                means = [math.nan] * len(_METRICS)
            summaries.append(CellSummary(index, cell.parameters(), len(rows), len(results), *means))
        return summaries


_METRICS = ("accuracy", "sparsity", "wall_time")


def _match_spectral(source: PointSet, target: PointSet) -> Tuple[Matching, float, List[float]]:
    affinity = affinity_matrix(source, target, "length-only", scale=SPECTRAL_LENGTH_SCALE)
    result = spectral_match(affinity, source.size, target.size)
    scores = normalized_rows(np.clip(result.principal_matrix(), 0.0, None))
    return result.matching, sparsity_index(scores, SPARSITY_THRESHOLD), [result.qap_score]


def _match_atgm(source: PointSet, target: PointSet, config: AtgmConfig) -> Tuple[Matching, float, List[float]]:
    result = atgm(source, target, config)
    return result.matching, result.diagnostics.sparsity, list(result.diagnostics.objectives.values())


def run_trial(cell: SweepCell, cell_index: int, trial: int, seed_base: int = 0) -> TrialRow:
    """
    Draw the instance of one trial, match it and score the matching against the ground truth. Failures of the
    matcher are recorded in the returned row.
    """
    seed = trial_seed(seed_base, cell_index, trial)
    row = TrialRow(cell_index, trial, seed, cell.parameters())
    instance = gen_synthetic(cell.spec(seed))
    start = time.perf_counter()
    try:
        target, kept = instance.target, np.arange(instance.target.size)
        if cell.removal_preprocess:
            kept = filter_outliers(instance.source, instance.target, cell.config).kept
            target = instance.target.subset(kept)
        if cell.method == "spectral":
            local, sparsity, objectives = _match_spectral(instance.source, target)
        else:
            local, sparsity, objectives = _match_atgm(instance.source, target, cell.config)
        matching = local.relabel(kept, instance.target.size)
    except AtgmException as exc:
        _logger.warning("cell %d trial %d failed: %s", cell_index, trial, exc)
        row.error = f"{type(exc).__name__}: {exc}"
        return row
    elapsed = time.perf_counter() - start
    row.result = TrialResult(accuracy(matching, instance.ground_truth), sparsity, elapsed, objectives)
    _logger.debug("cell %d trial %d: accuracy %.4f", cell_index, trial, row.result.accuracy)
    return row


def _run_task(task: Tuple[SweepCell, int, int, int]) -> TrialRow:
    return run_trial(*task)


def run_sweep(cells: Sequence[SweepCell], trials: int, seed_base: int = 0, workers: int = 1) -> SweepResult:
    """
    Run `trials` seeded trials of every cell. With `workers > 1` trials run in a process pool; the rows are the same
    as in a sequential run.
    """
    if trials < 1:
        raise ValueError("a sweep needs at least one trial per cell")
    if not cells:
        raise ValueError("a sweep needs at least one cell")
    if workers < 1:
        raise ValueError("a sweep needs at least one worker")
    tasks = [(cell, index, trial, seed_base) for index, cell in enumerate(cells) for trial in range(trials)]
    _logger.info("running %d cells with %d trials each", len(cells), trials)
    if workers == 1:
        rows = [_run_task(task) for task in tasks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            rows = list(executor.map(_run_task, tasks))
    result = SweepResult(tuple(cells), rows, seed_base)
    for summary in result.summaries():
        _logger.info(
            "cell %d (%s): accuracy %.4f over %d/%d trials",
            summary.cell,
            summary.parameters["label"] or f"n_in={summary.parameters['n_in']}",
            summary.accuracy,
            summary.succeeded,
            summary.trials,
        )
    return result


def write_trials_csv(result: SweepResult, stream: TextIO) -> None:
    """
    Write one CSV row per trial.
    """
    writer = csv.DictWriter(stream, fieldnames=TRIAL_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in result.rows:
        writer.writerow(row.as_row())


def summary_document(result: SweepResult) -> Dict[str, Any]:
    """
    The aggregate summary written by `write_summary_json`.
    """
    return {"seed_base": result.seed_base, "cells": [summary.to_dict() for summary in result.summaries()]}


def write_summary_json(result: SweepResult, stream: TextIO) -> None:
    """
    Write the per-cell means as a JSON document.
    """
    json.dump(summary_document(result), stream, indent=2)
    stream.write("\n")


def pivot_table(
    summaries: Iterable[CellSummary], row_key: str, column_key: str, metric: str = "accuracy"
) -> Tuple[List[Any], List[Any], List[List[float]]]:
    """
    Arrange one metric of the cell summaries as a table with one row per value of `row_key` and one column per value
    of `column_key`, both in order of first appearance. Missing cells are NaN.
    """
    summaries = list(summaries)
    if metric not in _METRICS:
        raise ValueError(f"unknown metric '{metric}'")
    rows: List[Any] = []
    columns: List[Any] = []
    for summary in summaries:
        for key, values in ((row_key, rows), (column_key, columns)):
            value = summary.parameters[key]
            if value not in values:
                values.append(value)
    table = [[math.nan] * len(columns) for _ in rows]
    for summary in summaries:
        row = rows.index(summary.parameters[row_key])
        column = columns.index(summary.parameters[column_key])
        table[row][column] = getattr(summary, metric)
    return rows, columns, table


def write_pivot_csv(
    summaries: Iterable[CellSummary], row_key: str, column_key: str, stream: TextIO, metric: str = "accuracy"
) -> None:
    """
    Write `pivot_table` as CSV; the header row holds the column values.
    """
    rows, columns, table = pivot_table(summaries, row_key, column_key, metric)
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow([f"{row_key}\\{column_key}", *columns])
    for value, cells in zip(rows, table):
        writer.writerow([value, *("" if math.isnan(cell) else cell for cell in cells)])
