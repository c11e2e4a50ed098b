"""
Exceptions shared by all atgm packages
"""

from typing import Optional


class AtgmException(Exception):
    """Base class of all exceptions raised by atgm."""


class DegenerateInputException(AtgmException):
    """Exception raised if a point set is too degenerate for the requested construction, e.g. all points identical,
    duplicate points or collinear input to a triangulation.
    """


class UnsupportedDimensionException(AtgmException):
    """Exception raised if an operation that is only defined for planar point sets is called with d != 2."""


class DimensionMismatchException(AtgmException):
    """Exception raised if the shapes of two operands do not agree."""


class ShapeException(AtgmException):
    """Exception raised if a matrix has an unusable shape, e.g. a cost matrix with more rows than columns."""


class CapacityException(AtgmException):
    """Exception raised if an instance exceeds the size guard of a dense or exhaustive routine."""


class InfeasibleAssignmentException(AtgmException):
    """Exception raised if a matrix violates the invariants of a soft assignment or a matching."""


class NumericException(AtgmException):
    """Exception raised if a non-finite value shows up in a computation. Solver failures carry the stage label and
    iteration index.
    """

    def __init__(self, message: str, stage: Optional[str] = None, iteration: Optional[int] = None):
        self.detail = message
        self.stage = stage
        self.iteration = iteration
        prefix = ""
        if stage is not None:
            prefix += f"[{stage}] "
        if iteration is not None:
            prefix += f"iteration {iteration}: "
        super().__init__(prefix + message)

    def with_stage(self, stage: str) -> "NumericException":
        """
        Return a copy of this exception labelled with the pipeline stage it occurred in.
        """
        return NumericException(self.detail, stage=stage, iteration=self.iteration)


class PointSetFormatException(AtgmException):
    """Exception raised if a point set or matching file is ill-formed. `line` is the 1-based offending line."""

    def __init__(self, message: str, path: str = "<input>", line: Optional[int] = None):
        self.path = path
        self.line = line
        location = path if line is None else f"{path}:{line}"
        super().__init__(f"{location}: {message}")
