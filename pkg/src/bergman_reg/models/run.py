"""Validated command configuration shared by the CLI and the service layer."""

import cmath
from enum import Enum
from pathlib import Path

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

MAX_N_MAX = 100_000
MAX_CLI_K = 6
MAX_SWEEP_DEGREE = 60


class Command(str, Enum):
    MOMENTS = "moments"
    KERNEL = "kernel"
    PROJECT = "project"
    SOBOLEV_NORM = "sobolev-norm"
    CONSTANTS = "constants"
    VERIFY = "verify"
    CUTOFF_CONVERGENCE = "cutoff-convergence"
    CHECK_IDENTITY = "check-identity"


def parse_complex(value: object) -> object:
    """Accept '0.3+0.4j', '0.3+0.4i' or plain numbers."""
    if isinstance(value, str):
        text = value.strip().replace("i", "j")
        try:
            return complex(text)
        except ValueError as e:
            raise ValueError(f"not a complex number: {value!r}") from e
    return value


class RunConfig(BaseModel):
    """One batch run; every flag is range-checked before computation starts."""

    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    command: Command
    weight_spec: str = Field(..., min_length=1, description="Weight specification string")
    N: int | None = Field(default=None, ge=0, le=MAX_N_MAX)
    j: int = Field(default=1, ge=1, le=10)
    k: int = Field(default=1, ge=0)
    l: int = Field(default=1, ge=1, le=2)
    samples: int = Field(default=100, ge=1, le=100_000)
    seed: int = Field(default=42, ge=0)
    tol: float = Field(default=1e-12, gt=0.0, le=1e-3)
    n_max: int | None = Field(default=None, ge=0, le=MAX_N_MAX)
    t_list: tuple[float, ...] = Field(default=(0.5, 0.2, 0.1, 0.05, 0.01))
    n_list: tuple[int, ...] | None = None
    z: complex = 0j
    w: complex = 0j
    points: int = Field(default=100, ge=1, le=100_000)
    decay: float = Field(default=1.0, gt=0.0, le=1.0)
    input_path: Path | None = None
    output_path: Path | None = None

    @field_validator("z", "w", mode="before")
    @classmethod
    def _complex(cls, value: object) -> object:
        value = parse_complex(value)
        if isinstance(value, complex | float | int) and not cmath.isfinite(value):
            raise ValueError(f"not a finite point: {value}")
        return value

    @field_validator("n_list")
    @classmethod
    def _n_list(cls, value: tuple[int, ...] | None) -> tuple[int, ...] | None:
        if value is not None and (not value or min(value) < 0):
            raise ValueError("n_list must be a non-empty list of non-negative integers")
        return value

    @model_validator(mode="after")
    def _per_command(self) -> "RunConfig":
        cmd = self.command
        if cmd is Command.KERNEL:
            if abs(self.z) >= 1.0 or abs(self.w) >= 1.0:
                raise ValueError("kernel points must satisfy |z| < 1 and |w| < 1")
            if self.N is None:
                raise ValueError("kernel requires --N")
        if cmd in (Command.SOBOLEV_NORM, Command.VERIFY) and self.k > MAX_CLI_K:
            raise ValueError(f"--k must be at most {MAX_CLI_K}")
        if cmd is Command.CONSTANTS and (self.N is None or self.N < 1):
            raise ValueError("constants requires --N >= 1")
        if cmd is Command.VERIFY and (self.N is None or not 1 <= self.N <= MAX_SWEEP_DEGREE):
            raise ValueError(f"verify requires 1 <= --N <= {MAX_SWEEP_DEGREE}")
        if cmd is Command.MOMENTS and self.N is None:
            raise ValueError("moments requires --N")
        if cmd is Command.CUTOFF_CONVERGENCE:
            ts = self.t_list
            if not ts or any(not 0.0 < t < 1.0 for t in ts):
                raise ValueError("t_list values must lie in (0, 1)")
            if any(a <= b for a, b in zip(ts, ts[1:], strict=False)):
                raise ValueError("t_list must be strictly decreasing")
            if self.n_list is None and self.N is None:
                raise ValueError("cutoff-convergence requires --N or --n-list")
        if self.n_max is not None and self.N is not None and cmd in (
            Command.KERNEL,
            Command.MOMENTS,
        ):
            if self.n_max < self.N:
                raise ValueError("--n-max must be at least --N")
        return self

    @property
    def n_values(self) -> list[int]:
        if self.n_list is not None:
            return sorted(set(self.n_list))
        return list(range((self.N or 0) + 1))
