"""
Core Module: text formats for point sets and matchings

A point set file starts with a header line `d m` followed by `m` lines of `d` whitespace separated coordinates. A
matching file holds one `i j` line per source node. Blank lines are ignored in both formats.
"""

from pathlib import Path
from typing import Iterator, List, Optional, Tuple, Union

import numpy as np

from .assignment import Matching
from .exceptions import InfeasibleAssignmentException, PointSetFormatException
from .geometry import PointSet

PathLike = Union[str, Path]


def _content_lines(text: str) -> Iterator[Tuple[int, List[str]]]:
    """
    Yield the 1-based line number and the tokens of every non-blank line.
    """
    for number, line in enumerate(text.splitlines(), start=1):
        tokens = line.split()
        if tokens:
            yield number, tokens


def _parse_int(token: str, path: str, line: int) -> int:
    try:
        return int(token)
    except ValueError as exc:
        raise PointSetFormatException(f"expected an integer, got '{token}'", path, line) from exc


def parse_point_set(text: str, path: str = "<input>") -> PointSet:
    """
    Parse the text of a point set file.
    """
    lines = list(_content_lines(text))
    if not lines:
        raise PointSetFormatException("missing header line 'd m'", path, 1)
    header_line, header = lines[0]
    if len(header) != 2:
        raise PointSetFormatException("header must be 'd m'", path, header_line)
    dim, size = (_parse_int(token, path, header_line) for token in header)
    if dim < 1 or size < 1:
        raise PointSetFormatException("header values d and m must be positive", path, header_line)
    rows = lines[1:]
    if len(rows) != size:
        last = rows[-1][0] if rows else header_line
        raise PointSetFormatException(f"header announces {size} points, found {len(rows)}", path, last)
    coords = np.empty((size, dim), dtype=np.float64)
    for index, (number, tokens) in enumerate(rows):
        if len(tokens) != dim:
            raise PointSetFormatException(f"expected {dim} coordinates, got {len(tokens)}", path, number)
        try:
            coords[index] = [float(token) for token in tokens]
        except ValueError as exc:
            raise PointSetFormatException(f"invalid coordinate in '{' '.join(tokens)}'", path, number) from exc
        if not np.all(np.isfinite(coords[index])):
            raise PointSetFormatException("coordinates must be finite", path, number)
    return PointSet(coords)


def read_point_set(path: PathLike) -> PointSet:
    """
    Read a point set file.
    """
    return parse_point_set(Path(path).read_text(encoding="utf-8"), str(path))


def format_point_set(points: PointSet) -> str:
    """
    Render a point set in the file format. Coordinates are written with `repr` precision so they read back exactly.
    """
    lines = [f"{points.dim} {points.size}"]
    lines.extend(" ".join(repr(float(value)) for value in row) for row in points.coords)
    return "\n".join(lines) + "\n"


def write_point_set(points: PointSet, path: PathLike) -> None:
    """
    Write a point set file.
    """
    Path(path).write_text(format_point_set(points), encoding="utf-8")


def parse_matching(text: str, path: str = "<input>", n: Optional[int] = None) -> Matching:
    """
    Parse the text of a matching file of `i j` lines.
    """
    pairs: List[Tuple[int, int]] = []
    for number, tokens in _content_lines(text):
        if len(tokens) != 2:
            raise PointSetFormatException("matching lines must be 'i j'", path, number)
        pairs.append((_parse_int(tokens[0], path, number), _parse_int(tokens[1], path, number)))
    if not pairs:
        raise PointSetFormatException("matching file is empty", path)
    try:
        return Matching.from_pairs(pairs, n)
    except InfeasibleAssignmentException as exc:
        raise PointSetFormatException(str(exc), path) from exc


def read_matching(path: PathLike, n: Optional[int] = None) -> Matching:
    """
    Read a matching file.
    """
    return parse_matching(Path(path).read_text(encoding="utf-8"), str(path), n)


def format_matching(matching: Matching) -> str:
    """
    Render a matching as `i j` lines in source order.
    """
    return "".join(f"{i} {j}\n" for i, j in matching.pairs())


def write_matching(matching: Matching, path: PathLike) -> None:
    """
    Write a matching file.
    """
    Path(path).write_text(format_matching(matching), encoding="utf-8")
