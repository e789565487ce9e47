"""
Default configuration for pinsim.

The defaults encode the January 18, 2013 AAPL instance: 10:00 AM open at $498.34,
$500.00 strike, implied volatility 1.102e-3 per sqrt-minute and a 360 minute horizon
integrated until 3 minutes before the close.
"""

from pydantic import BaseModel, ConfigDict, Field


class Settings(BaseModel):
    """Resolved defaults; every field can be overridden from the command line."""

    model_config = ConfigDict(frozen=True)

    # Market instance
    strike: float = 500.0
    open_price: float = 498.34
    sigma: float = 1.102e-3
    mu: float = 0.0
    horizon_min: float = 360.0
    end_min: float = 357.0
    steps: int = 357

    # Hedging impact
    simulate_betas: tuple[float, ...] = (0.1, 1.0, 10.0, 1e6)
    ensemble_beta: float = 1.0
    scan_betas: tuple[float, ...] = (-0.15, -0.2, -0.25, -0.3, -0.35, -0.4, -0.45)
    hedge_position: float = 1.0

    # Monte Carlo
    noise_ratio: float = 1.0
    pin_tolerance: float = 0.005
    runs: int = 5000
    seed: int = 42
    chunk_size: int = Field(default=500, ge=1)
    max_workers: int = Field(default=4, ge=1)

    # Empirical diagnostic, dead-band relative to |n|
    flow_deadband: float = 1e-6
    price_deadband: float = 1e-9

    # Singularity refinement target in dimensionless time
    singularity_tolerance: float = 1e-9

    log_level: str = "WARNING"


settings = Settings()
