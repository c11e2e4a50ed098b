"""
App Module: atgm command line application
"""

import json
import sys
from argparse import Namespace
from contextlib import contextmanager
from typing import Any, Callable, Dict, Iterator, List, Optional, TextIO, Tuple

import numpy as np

from ..baseline import spectral_match
from ..bench import (
    SweepCell,
    accuracy,
    build_preset,
    run_sweep,
    write_pivot_csv,
    write_summary_json,
    write_trials_csv,
)
from ..core import Matching, PointSet, format_matching, format_point_set, read_matching, read_point_set
from ..core.exceptions import AtgmException, NumericException
from ..objectives import affinity_matrix
from ..pipeline import AtgmConfig, atgm, filter_outliers, remove_outliers
from ..utils import parse_number_list
from ..utils.logging import get_logger
from ..utils.parser import config_overrides
from ..utils.types import IntArray
from .constants import EXIT_INPUT_ERROR, EXIT_NUMERIC_ERROR, EXIT_OK

_logger = get_logger(__name__)


class AtgmApp:
    """
    Application class running one atgm subcommand on parsed command line arguments
    """

    ATGM_COMMANDS = {
        "match": "Match a source point set into a target point set",
        "sweep": "Run seeded synthetic experiments",
        "baseline": "Spectral matching of two point sets",
        "filter": "Remove target outliers without matching",
    }

    def __init__(self, stdout: Optional[TextIO] = None) -> None:
        self.stdout = sys.stdout if stdout is None else stdout
        self.command_functions: Dict[str, Callable[[Namespace], None]] = {
            c: getattr(self, f"_command_{c}") for c in self.ATGM_COMMANDS
        }

    def run(self, args: Namespace) -> int:
        """
        Run the subcommand selected in `args` and return the process exit code.
        """
        if args.command not in self.command_functions:
            _logger.error(
                "atgm was called without a command, please select one of: %s", ", ".join(self.ATGM_COMMANDS)
            )
            return EXIT_INPUT_ERROR
        try:
            self.command_functions[args.command](args)
        except NumericException as exc:
            _logger.error("numeric failure: %s", exc)
            return EXIT_NUMERIC_ERROR
        except (AtgmException, OSError, ValueError) as exc:
            _logger.error("%s", exc)
            return EXIT_INPUT_ERROR
        return EXIT_OK

    @staticmethod
    def _config(args: Namespace) -> AtgmConfig:
        base = None
        if getattr(args, "config", None):
            with open(args.config, encoding="utf-8") as file:
                mapping = json.load(file)
            if not isinstance(mapping, dict):
                raise ValueError(f"{args.config}: the configuration file must hold a JSON object")
            base = AtgmConfig.from_mapping(mapping)
        return AtgmConfig.from_mapping(config_overrides(args), base)

    @contextmanager
    def _output(self, path: Optional[str]) -> Iterator[TextIO]:
        if path is None:
            yield self.stdout
            return
        with open(path, "w", encoding="utf-8", newline="") as file:
            yield file
        _logger.info("wrote %s", path)

    def _emit(self, text: str, path: Optional[str]) -> None:
        with self._output(path) as stream:
            stream.write(text)

    def _write_json(self, document: Dict[str, Any], path: str) -> None:
        with self._output(path) as stream:
            json.dump(document, stream, indent=2)
            stream.write("\n")

    @staticmethod
    def _read_pair(args: Namespace) -> Tuple[PointSet, PointSet]:
        return read_point_set(args.source), read_point_set(args.target)

    @staticmethod
    def _score(matching: Matching, path: Optional[str], document: Dict[str, Any]) -> None:
        if path is None:
            return
        ground_truth = read_matching(path, matching.target_count)
        document["accuracy"] = accuracy(matching, ground_truth)
        _logger.info("accuracy %.4f against %s", document["accuracy"], path)

    def _command_match(self, args: Namespace) -> None:
        source, target = self._read_pair(args)
        result = atgm(source, target, self._config(args))
        self._emit(format_matching(result.matching), args.out)
        diagnostics = result.diagnostics.to_dict()
        self._score(result.matching, args.ground_truth, diagnostics)
        if args.diagnostics is not None:
            self._write_json(diagnostics, args.diagnostics)

    def _command_baseline(self, args: Namespace) -> None:
        source, target = self._read_pair(args)
        kept: IntArray = np.arange(target.size)
        if args.removal:
            kept = filter_outliers(source, target, self._config(args)).kept
        reduced = target.subset(kept)
        affinity = affinity_matrix(source, reduced, args.affinity, scale=args.scale)
        result = spectral_match(affinity, source.size, reduced.size, args.readout)
        matching = result.matching.relabel(kept, target.size)
        self._emit(format_matching(matching), args.out)
        diagnostics: Dict[str, Any] = {
            "qap_score": result.qap_score,
            "converged": result.converged,
            "iterations": result.iterations,
            "kept": [int(j) for j in kept],
        }
        self._score(matching, args.ground_truth, diagnostics)
        if args.diagnostics is not None:
            self._write_json(diagnostics, args.diagnostics)

    def _command_filter(self, args: Namespace) -> None:
        source, target = self._read_pair(args)
        config = self._config(args)
        if args.no_transform:
            kept = remove_outliers(source, target, config.ratio_k, source.size, config.removal_rule).kept
        else:
            kept = filter_outliers(source, target, config).kept
        _logger.info("retained %d of %d target points", kept.size, target.size)
        self._emit(format_point_set(target.subset(kept)), args.out)
        if args.kept is not None:
            self._emit("".join(f"{j}\n" for j in kept), args.kept)

    @staticmethod
    def _grid(args: Namespace, config: AtgmConfig) -> Tuple[List[SweepCell], str, str]:
        if args.preset is not None:
            preset = build_preset(args.preset, args.max_n, config)
            return preset.cells, preset.row_key, preset.column_key

        def counts(text: str) -> List[int]:
            values = parse_number_list(text)
            if any(not value.is_integer() for value in values):
                raise ValueError(f"expected whole numbers, got '{text}'")
            return [int(value) for value in values]

        cells = [
            SweepCell(n_in, n_out, sigma, args.method, args.removal, config)
            for n_in in counts(args.n_in)
            for n_out in counts(args.n_out)
            for sigma in parse_number_list(args.sigma)
        ]
        return cells, "n_in", "sigma"

    def _command_sweep(self, args: Namespace) -> None:
        cells, row_key, column_key = self._grid(args, self._config(args))
        if not cells:
            raise ValueError("the sweep grid is empty")
        result = run_sweep(cells, args.trials, args.seed, args.workers)
        with self._output(args.out) as stream:
            if args.output == "csv":
                write_trials_csv(result, stream)
            else:
                write_summary_json(result, stream)
        if args.pivot is not None:
            with self._output(args.pivot) as stream:
                write_pivot_csv(result.summaries(), row_key, column_key, stream)
