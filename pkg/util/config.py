import os
from dataclasses import dataclass, field, fields, replace
from typing import List, Optional

import pyrallis

from util.errors import TriwalkError
from util.types import ErrorCode

MAX_DIM_ENV = "TRIWALK_MAX_DIM"
DEFAULT_MAX_DIM = 2000


def max_dim_from_env(default: int = DEFAULT_MAX_DIM) -> int:
    raw = os.environ.get(MAX_DIM_ENV)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        raise TriwalkError(ErrorCode.BAD_TOKEN, f"{MAX_DIM_ENV} must be an integer, got {raw!r}")
    if value < 1:
        raise TriwalkError(ErrorCode.BAD_SIZE, f"{MAX_DIM_ENV} must be positive, got {value}")
    return value


@dataclass
class ToleranceConfig:
    # eigenvalues closer than this are one cluster
    cluster_tol: float = 1e-7
    # max distance between a predicted and a computed eigenvalue
    pairing_tol: float = 1e-9
    # ||Mv - lambda v|| <= residual_tol * ||v||
    residual_tol: float = 1e-9
    # singular values <= rank_tol * sigma_max count as zero
    rank_tol: float = 1e-9
    # matrix identities (dd* = I, U_c L = L T~, ...)
    identity_tol: float = 1e-12
    max_dim: int = DEFAULT_MAX_DIM

    def __post_init__(self):
        self.validate()

    def validate(self):
        for f in fields(self):
            value = getattr(self, f.name)
            if value is None or value <= 0:
                raise TriwalkError(ErrorCode.OUT_OF_RANGE, f"{f.name} must be positive, got {value}")

    def with_overrides(self, **overrides) -> "ToleranceConfig":
        given = {k: v for k, v in overrides.items() if v is not None}
        return replace(self, **given)

    @classmethod
    def from_env(cls, **overrides) -> "ToleranceConfig":
        return cls(max_dim=max_dim_from_env()).with_overrides(**overrides)


@dataclass
class RunConfig:
    command: str = "verify"
    inputs: List[str] = field(default_factory=list)
    output_format: Optional[str] = None
    out: Optional[str] = None
    limit: Optional[int] = None
    steps: int = 50
    stride: int = 1
    log: Optional[str] = None
    tolerances: ToleranceConfig = field(default_factory=ToleranceConfig)


def load_run_config(path: str) -> RunConfig:
    with open(path, "r", encoding="utf-8") as stream:
        config = pyrallis.load(RunConfig, stream)
    config.tolerances.validate()
    return config
