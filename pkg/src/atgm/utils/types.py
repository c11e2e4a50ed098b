"""
Custom types for atgm
"""

from typing import Literal

import numpy as np
from numpy.typing import NDArray

FloatArray = NDArray[np.float64]
IntArray = NDArray[np.intp]
BoolArray = NDArray[np.bool_]

LapBackend = Literal["hungarian", "scipy"]
SolverMode = Literal["nonconvex-F", "convex-G"]
Connectivity = Literal["complete", "delaunay"]
UnaryKind = Literal["shape-context", "zero"]
RemovalRule = Literal["any", "all"]
Stages = Literal["f-g", "f-only"]
AffinityKind = Literal["angle-length", "length-only"]
Readout = Literal["greedy", "hungarian"]
Method = Literal["atgm", "spectral"]
