"""
Monte Carlo configuration and results.
"""

from pydantic import BaseModel, ConfigDict, Field, model_validator


class NoiseConfig(BaseModel):
    """Exogenous trading noise relative to implied volatility, and the ensemble size."""

    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    noise_ratio: float = Field(default=1.0, ge=0)
    seed: int = Field(default=42, ge=0, lt=2**64)
    runs: int = Field(default=5000, ge=1)


class EnsembleStats(BaseModel):
    """Closing-price distribution and pin-probability estimate of an ensemble."""

    model_config = ConfigDict(frozen=True)

    runs: int = Field(ge=1)
    closing_prices: list[float]
    pin_count: int = Field(ge=0)
    pin_probability: float = Field(ge=0, le=1)
    wilson_interval: tuple[float, float]
    pin_tolerance: float = Field(ge=0)
    singular_count: int = Field(default=0, ge=0)
    mean_close: float | None = None
    std_close: float | None = None
    baseline_pin_probability: float | None = None

    @model_validator(mode="after")
    def check_consistency(self):
        if self.pin_count > self.runs:
            raise ValueError("pin_count cannot exceed runs")
        if self.pin_probability != self.pin_count / self.runs:
            raise ValueError("pin_probability must equal pin_count / runs")
        lo, hi = self.wilson_interval
        if not lo <= self.pin_probability <= hi:
            raise ValueError("Wilson interval must contain the estimate")
        return self


class SweepRow(BaseModel):
    """One (beta, noise ratio) cell of a pin-probability sweep."""

    model_config = ConfigDict(frozen=True)

    beta: float
    noise_ratio: float
    stats: EnsembleStats | None = None
    error: str | None = None
