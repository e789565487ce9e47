"""
Physical and dimensionless parameter sets of the hedging-feedback model.
"""

import math

from pydantic import BaseModel, ConfigDict, Field, model_validator


class ModelParams(BaseModel):
    """Physical parameters: prices in dollars, time in minutes, volatility per sqrt-minute."""

    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    strike: float = Field(gt=0, description="Strike price K")
    sigma: float = Field(gt=0, description="Implied volatility per sqrt-minute")
    mu: float = Field(default=0.0, description="Drift per minute")
    horizon: float = Field(gt=0, description="Minutes from simulation start to expiration (t0)")
    position: float = Field(default=0.0, description="Net straddles held by the hedger (n)")
    elasticity: float = Field(default=0.0, ge=0, description="Price elasticity E")

    @property
    def has_hedging_force(self) -> bool:
        return self.position != 0.0 and self.elasticity != 0.0

    @property
    def log_scale(self) -> float:
        """sigma * sqrt(t0), the log-price unit of the dimensionless coordinate z."""
        return self.sigma * math.sqrt(self.horizon)

    def with_beta(self, beta: float) -> "ModelParams":
        """
        Physical parameters realising a dimensionless hedging impact.

        Uses one straddle unit signed like beta (+1 for beta = 0) and the matching
        elasticity |beta| * sqrt(2 pi sigma^2 t0).

        Args:
            beta: Dimensionless hedging impact

        Returns:
            New parameter set
        """
        position = -1.0 if beta < 0 else 1.0
        elasticity = abs(beta) * math.sqrt(2.0 * math.pi * self.sigma**2 * self.horizon)
        return self.model_copy(update={"position": position, "elasticity": elasticity})


class DimensionlessParams(BaseModel):
    """alpha, beta and the (z, s) coordinate map of the scaled model."""

    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    alpha: float
    beta: float
    caption_impact: float = Field(description="n E / sqrt(2 pi), equal to beta sigma sqrt(t0)")
    strike: float = Field(gt=0)
    sigma: float = Field(gt=0)
    horizon: float = Field(gt=0)

    @model_validator(mode="after")
    def check_caption_impact(self):
        expected = self.beta * self.sigma * math.sqrt(self.horizon)
        if not math.isclose(self.caption_impact, expected, rel_tol=1e-12, abs_tol=0.0):
            raise ValueError("caption_impact must equal beta * sigma * sqrt(horizon)")
        return self

    @property
    def log_scale(self) -> float:
        return self.sigma * math.sqrt(self.horizon)

    @property
    def has_hedging_force(self) -> bool:
        return self.beta != 0.0


class StatePoint(BaseModel):
    """One state in both physical and dimensionless coordinates."""

    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    time: float
    price: float = Field(gt=0)
    tau: float = Field(ge=0)
    z: float
    s: float
