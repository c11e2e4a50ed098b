"""
The command line parser for the project.
"""

import sys
from argparse import ArgumentParser, Namespace
from textwrap import dedent
from typing import Any, Optional, cast

from . import logging
from .types import Readout

__all__ = ["get_parser", "config_overrides"]

if sys.version_info[1] < 8:
    import importlib_metadata as metadata  # nocoverage
else:
    from importlib import metadata  # nocoverage

VERSION = metadata.version("atgm")

# flag destinations that map one-to-one onto configuration keys
CONFIG_FLAGS = ("lam", "lambda1", "lambda2", "epsilon", "ratio_k", "rounds_k0", "connectivity", "lap_backend")

READOUTS: tuple[Readout, ...] = ("greedy", "hungarian")


def _add_config_flags(parser: ArgumentParser) -> None:
    group = parser.add_argument_group("matcher options")
    group.add_argument("--config", metavar="PATH", help="JSON object with matcher configuration keys")
    group.add_argument("--lambda", dest="lam", type=float, help="weight of the edge discrepancy term [1]")
    group.add_argument("--lambda1", type=float, help="weight of the l1 term of the node shifting solves [1000]")
    group.add_argument("--lambda2", type=float, help="weight of the shift smoothness term [1]")
    group.add_argument("--epsilon", type=float, help="regularizer of transformed edge lengths [1e-8]")
    group.add_argument("--ratio-k", type=float, help="threshold of the outlier ratio test [1.5]")
    group.add_argument(
        "--rounds", dest="rounds_k0", type=int, metavar="K", help="outlier removal rounds [2 if m < n]"
    )
    group.add_argument("--connectivity", choices=["complete", "delaunay"], help="source graph edges [complete]")
    group.add_argument("--lap-backend", choices=["hungarian", "scipy"], help="linear assignment solver [hungarian]")


def _add_pair(parser: ArgumentParser) -> None:
    parser.add_argument("source", help="source point set file")
    parser.add_argument("target", help="target point set file")


def config_overrides(args: Namespace) -> dict[str, Any]:
    """
    The configuration keys set on the command line.
    """
    return {key: getattr(args, key) for key in CONFIG_FLAGS if getattr(args, key, None) is not None}


def get_parser() -> ArgumentParser:
    """
    Return the parser for command line options.
    """
    parser = ArgumentParser(
        prog="atgm",
        description=dedent(
            """\
            atgm
            Match point sets with adaptively transformed graphs.
            """
        ),
    )
    levels = [
        ("error", logging.ERROR),
        ("warning", logging.WARNING),
        ("info", logging.INFO),
        ("debug", logging.DEBUG),
    ]

    def get(levels: list[tuple[str, int]], name: str) -> Optional[int]:
        for key, val in levels:
            if key == name:
                return val
        return None  # nocoverage

    parser.add_argument(
        "--log",
        default="warning",
        choices=[val for _, val in levels],
        metavar=f"{{{','.join(key for key, _ in levels)}}}",
        help="set log level [%(default)s]",
        type=cast(Any, lambda name: get(levels, name)),
    )
    parser.add_argument("--version", "-v", action="version", version=f"%(prog)s {VERSION}")

    commands = parser.add_subparsers(dest="command", metavar="COMMAND")

    match = commands.add_parser("match", help="match a source point set into a target point set")
    _add_pair(match)
    _add_config_flags(match)
    match.add_argument("--out", "-o", metavar="PATH", help="matching file [stdout]")
    match.add_argument("--diagnostics", metavar="PATH", help="write solver diagnostics as JSON")
    match.add_argument("--ground-truth", metavar="PATH", help="matching file to score the result against")

    sweep = commands.add_parser("sweep", help="run seeded synthetic experiments")
    _add_config_flags(sweep)
    sweep.add_argument("--preset", help="named grid (table1-noise, table1-outliers, runtime-inliers, ...)")
    sweep.add_argument("--max-n", type=int, help="largest inlier count of a preset grid")
    sweep.add_argument("--n-in", default="30", help="comma separated inlier counts [%(default)s]")
    sweep.add_argument("--n-out", default="0", help="comma separated outlier counts [%(default)s]")
    sweep.add_argument("--sigma", default="0", help="comma separated noise levels [%(default)s]")
    sweep.add_argument("--method", choices=["atgm", "spectral"], default="atgm", help="matcher [%(default)s]")
    sweep.add_argument("--removal", action="store_true", help="run the outlier removal rounds first")
    sweep.add_argument("--trials", type=int, default=10, help="trials per cell [%(default)s]")
    sweep.add_argument("--seed", type=int, default=0, help="seed base of the trial seeds [%(default)s]")
    sweep.add_argument("--workers", type=int, default=1, help="worker processes [%(default)s]")
    sweep.add_argument(
        "--output",
        choices=["csv", "json"],
        default="csv",
        help="per-trial CSV rows or a JSON summary [%(default)s]",
    )
    sweep.add_argument("--out", "-o", metavar="PATH", help="result file [stdout]")
    sweep.add_argument("--pivot", metavar="PATH", help="write mean accuracies as a CSV table")

    baseline = commands.add_parser("baseline", help="spectral matching of two point sets")
    _add_pair(baseline)
    _add_config_flags(baseline)
    baseline.add_argument("--readout", choices=READOUTS, default="greedy", help="discretization [%(default)s]")
    baseline.add_argument(
        "--affinity",
        choices=["angle-length", "length-only"],
        default="length-only",
        help="pairwise affinity [%(default)s]",
    )
    baseline.add_argument("--scale", type=float, default=0.15, help="length-only affinity scale [%(default)s]")
    baseline.add_argument("--removal", action="store_true", help="run the outlier removal rounds first")
    baseline.add_argument("--out", "-o", metavar="PATH", help="matching file [stdout]")
    baseline.add_argument("--diagnostics", metavar="PATH", help="write the principal vector summary as JSON")
    baseline.add_argument("--ground-truth", metavar="PATH", help="matching file to score the result against")

    filtering = commands.add_parser("filter", help="remove target outliers only")
    _add_pair(filtering)
    _add_config_flags(filtering)
    filtering.add_argument(
        "--no-transform",
        action="store_true",
        help="one ratio test with the source points as transformed points, without optimization",
    )
    filtering.add_argument("--out", "-o", metavar="PATH", help="retained target points [stdout]")
    filtering.add_argument("--kept", metavar="PATH", help="original indices of the retained points")

    return parser
