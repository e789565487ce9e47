"""
Scaling substitutions between physical (S, t) and dimensionless (z, s) coordinates.
"""

import math

from app.models.params import DimensionlessParams, ModelParams, StatePoint


def to_dimensionless(params: ModelParams) -> DimensionlessParams:
    """
    Scaled drift and hedging impact of a physical parameter set.

    Args:
        params: Physical parameters

    Returns:
        alpha = (mu + sigma^2/2) sqrt(t0) / sigma and beta = n E / sqrt(2 pi sigma^2 t0)
    """
    sqrt_t0 = math.sqrt(params.horizon)
    alpha = (params.mu + 0.5 * params.sigma**2) * sqrt_t0 / params.sigma
    beta = params.position * params.elasticity / math.sqrt(
        2.0 * math.pi * params.sigma**2 * params.horizon
    )
    return DimensionlessParams(
        alpha=alpha,
        beta=beta,
        caption_impact=beta * params.sigma * sqrt_t0,
        strike=params.strike,
        sigma=params.sigma,
        horizon=params.horizon,
    )


def dimensionless_for_beta(params: ModelParams, beta: float) -> DimensionlessParams:
    """Scaled parameters with beta set directly; alpha still comes from params."""
    return to_dimensionless(params).model_copy(
        update={"beta": beta, "caption_impact": beta * params.sigma * math.sqrt(params.horizon)}
    )


def map_state(price: float, time: float, params: ModelParams) -> StatePoint:
    """
    Express a physical state in both coordinate systems.

    Args:
        price: Spot price S
        time: Minutes since simulation start
        params: Model parameters

    Returns:
        StatePoint with tau = t0 - t, z = ln(S/K) / (sigma sqrt(t0)), s = t / t0
    """
    if not 0 <= time <= params.horizon:
        raise ValueError(f"time must lie in [0, {params.horizon}], got {time!r}")
    return StatePoint(
        time=time,
        price=price,
        tau=params.horizon - time,
        z=math.log(price / params.strike) / params.log_scale,
        s=time / params.horizon,
    )


def inverse_map(z: float, s: float, dp: DimensionlessParams | ModelParams) -> tuple[float, float]:
    """
    Physical (price, time) of a scaled state.

    Args:
        z: Dimensionless log-moneyness
        s: Dimensionless time
        dp: Any parameter set carrying strike, sigma and horizon

    Returns:
        Tuple of (price, minutes since start)
    """
    return dp.strike * math.exp(z * dp.log_scale), s * dp.horizon
