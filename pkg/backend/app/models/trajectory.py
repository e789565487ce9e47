"""
Integration settings, trajectories and singularity scan results.
"""

from enum import Enum
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class IntegrationMode(str, Enum):
    CORRECTED = "corrected"
    ORIGINAL = "original_time_term_only"
    INFINITE_ELASTICITY = "infinite_elasticity"


class Termination(str, Enum):
    COMPLETED = "completed"
    SINGULARITY_DETECTED = "singularity_detected"
    STEP_REJECTED = "step_rejected"


class OdeConfig(BaseModel):
    """Dimensionless integration window and scheme."""

    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    s_start: float = Field(default=0.0, ge=0)
    s_end: float = Field(lt=1)
    z_start: float
    steps: int = Field(default=357, ge=1)
    mode: IntegrationMode = IntegrationMode.CORRECTED
    scheme: Literal["rk4", "euler"] = "rk4"

    @model_validator(mode="after")
    def check_window(self):
        if not self.s_start < self.s_end:
            raise ValueError("s_start must be strictly less than s_end")
        return self

    @property
    def step_size(self) -> float:
        return (self.s_end - self.s_start) / self.steps

    def grid(self, k: int) -> float:
        """Dimensionless time of grid node k."""
        return self.s_start + k * self.step_size


class TrajectorySample(BaseModel):
    model_config = ConfigDict(frozen=True)

    s: float
    z: float
    t_min: float
    price: float


class Trajectory(BaseModel):
    """Ordered samples of one integration plus how it ended."""

    model_config = ConfigDict(frozen=True)

    samples: list[TrajectorySample]
    termination: Termination = Termination.COMPLETED
    singular_s: float | None = None
    beta: float
    mode: IntegrationMode = IntegrationMode.CORRECTED

    @field_validator("samples")
    def check_increasing(cls, v):
        if not v:
            raise ValueError("a trajectory needs at least one sample")
        for previous, current in zip(v, v[1:]):
            if not current.s > previous.s:
                raise ValueError("trajectory samples must have strictly increasing s")
        return v

    @property
    def final(self) -> TrajectorySample:
        return self.samples[-1]

    @property
    def completed(self) -> bool:
        return self.termination == Termination.COMPLETED


class SingularityCell(BaseModel):
    model_config = ConfigDict(frozen=True)

    beta: float
    s: float
    denominator: float
    sign: int


class SingularityRow(BaseModel):
    """First denominator sign change for one beta, if any."""

    model_config = ConfigDict(frozen=True)

    beta: float
    s_star: float | None = None
    note: str = ""


class SingularityScan(BaseModel):
    model_config = ConfigDict(frozen=True)

    z: float
    cells: list[SingularityCell]
    rows: list[SingularityRow]
