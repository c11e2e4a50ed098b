"""
Pipeline Module: matcher configuration
"""

from dataclasses import dataclass, field, fields, replace
from typing import Any, Mapping, Optional

from ..fw.types import FwConfig
from ..objectives.constants import DEFAULT_EPSILON
from ..utils.types import Connectivity, LapBackend, RemovalRule, Stages, UnaryKind
from .constants import DEFAULT_LAMBDA, DEFAULT_LAMBDA1, DEFAULT_LAMBDA2, DEFAULT_RATIO_K, DEFAULT_ROUNDS

_CHOICES = {
    "connectivity": ("complete", "delaunay"),
    "unary": ("shape-context", "zero"),
    "removal_rule": ("any", "all"),
    "stages": ("f-g", "f-only"),
}


@dataclass(frozen=True)
class AtgmConfig:
    """
    All tunables of the matcher.

    `rounds_k0` is the number of outlier removal rounds; `None` means 2 rounds when the target has more points
    than the source. Equal-size problems never run removal rounds. `fw` configures the edge discrepancy solves,
    `fw_convex` the node shifting solves.
    """

    # pylint: disable=too-many-instance-attributes

    lam: float = DEFAULT_LAMBDA
    lambda1: float = DEFAULT_LAMBDA1
    lambda2: float = DEFAULT_LAMBDA2
    epsilon: float = DEFAULT_EPSILON
    ratio_k: float = DEFAULT_RATIO_K
    rounds_k0: Optional[int] = None
    connectivity: Connectivity = "complete"
    unary: UnaryKind = "shape-context"
    g_xy_unary: bool = True
    removal_rule: RemovalRule = "any"
    stages: Stages = "f-g"
    fw: FwConfig = field(default_factory=FwConfig.nonconvex)
    fw_convex: FwConfig = field(default_factory=FwConfig.convex)

    def __post_init__(self) -> None:
        if self.ratio_k <= 0.0:
            raise ValueError("ratio_k must be positive")
        if self.epsilon <= 0.0:
            raise ValueError("epsilon must be positive")
        if min(self.lam, self.lambda1, self.lambda2) < 0.0:
            raise ValueError("lambda, lambda1 and lambda2 must be nonnegative")
        if self.rounds_k0 is not None and self.rounds_k0 < 0:
            raise ValueError("rounds_k0 must be nonnegative")
        for name, choices in _CHOICES.items():
            if getattr(self, name) not in choices:
                raise ValueError(f"{name} must be one of {', '.join(choices)}")

    def rounds_for(self, m: int, n: int) -> int:
        """
        Number of removal rounds for an `m` versus `n` problem.
        """
        if m == n:
            return 0
        return DEFAULT_ROUNDS if self.rounds_k0 is None else self.rounds_k0

    @property
    def lap_backend(self) -> LapBackend:
        """Assignment backend used for post-discretization."""
        return self.fw.lap_backend

    def with_lap_backend(self, backend: LapBackend) -> "AtgmConfig":
        """
        Copy of the configuration using `backend` for every assignment problem.
        """
        return replace(
            self,
            fw=replace(self.fw, lap_backend=backend),
            fw_convex=replace(self.fw_convex, lap_backend=backend),
        )

    @classmethod
    def from_mapping(cls, mapping: Mapping[str, Any], base: Optional["AtgmConfig"] = None) -> "AtgmConfig":
        """
        Build a configuration from plain key/value pairs on top of `base` (the defaults if omitted). Keys are field
        names with `-` or `_`; `lambda` is accepted for `lam`, and `lap_backend` and `check_iterates` apply to both
        solver configurations. Unknown keys raise a `ValueError`.
        """
        config = cls() if base is None else base
        scalar = {item.name: item for item in fields(cls) if item.name not in ("fw", "fw_convex")}
        changes: dict[str, Any] = {}
        solver_changes: dict[str, Any] = {}
        for raw_key, value in mapping.items():
            key = raw_key.replace("-", "_")
            key = "lam" if key == "lambda" else key
            if key in ("lap_backend", "check_iterates"):
                solver_changes[key] = value
            elif key in scalar:
                changes[key] = _coerce(key, getattr(config, key), value)
            else:
                raise ValueError(f"unknown configuration key '{raw_key}'")
        config = replace(config, **changes)
        if solver_changes:
            config = replace(
                config,
                fw=replace(config.fw, **solver_changes),
                fw_convex=replace(config.fw_convex, **solver_changes),
            )
        return config


def _coerce(key: str, current: Any, value: Any) -> Any:
    """
    Convert `value` to the type of the configuration field `key`.
    """
    try:
        if key == "rounds_k0":
            return None if value is None else int(value)
        if isinstance(current, bool):
            if not isinstance(value, bool):
                raise ValueError(f"expected true or false, got {value!r}")
            return value
        if isinstance(current, float):
            return float(value)
        return str(value)
    except (TypeError, ValueError) as exc:
        raise ValueError(f"invalid value for configuration key '{key}': {exc}") from exc
