"""
Price impact of hedging demand and the hedging-feedback denominator.
"""

import math

import numpy as np

from app.core.exceptions import ExpirationReachedError, NoHedgingForceError
from app.models.params import DimensionlessParams, ModelParams

from .greeks import d1


def price_impact(Q: float, price: float, params: ModelParams) -> float:
    """
    Price change caused by an excess demand of Q shares.

    Args:
        Q: Excess demand (positive) or supply (negative)
        price: Spot price S
        params: Model parameters (uses the elasticity E)

    Returns:
        Delta S = E Q S
    """
    if not price > 0:
        raise ValueError(f"price must be positive, got {price!r}")
    return params.elasticity * Q * price


def _exp(x: float) -> float:
    try:
        return math.exp(x)
    except OverflowError:
        return math.inf


def rhs_denominator(price: float, tau: float, params: ModelParams) -> float:
    """
    Denominator of the physical hedging-feedback ODE.

    The two terms can cancel when the hedger is short straddles (n < 0); the
    resulting zero is the singular, unstable-price regime.

    Args:
        price: Spot price S
        tau: Minutes to expiration
        params: Model parameters with non-zero position and elasticity

    Returns:
        sigma sqrt(2 pi tau) / (E n) * exp(d1^2 / 2) + 2
    """
    if not params.has_hedging_force:
        raise NoHedgingForceError("position and elasticity must both be non-zero")
    x = d1(price, tau, params)
    lead = params.sigma * math.sqrt(2.0 * math.pi * tau) / (params.elasticity * params.position)
    return lead * _exp(0.5 * x * x) + 2.0


def price_velocity(price: float, tau: float, params: ModelParams) -> float:
    """
    dS/dt of the hedging-feedback model in physical coordinates.

    Zero when there is no hedging force.
    """
    if not params.has_hedging_force:
        return 0.0
    drift = params.mu + 0.5 * params.sigma**2
    numerator = price * (drift - math.log(price / params.strike) / tau)
    return numerator / rhs_denominator(price, tau, params)


def hedge_term(z, s, alpha: float, beta: float):
    """
    sqrt(1 - s) / beta * exp(d1^2 / 2) in scaled coordinates.

    Accepts floats or numpy arrays. Overflow saturates to +/- inf, which sends the
    hedging response to zero far from the strike.
    """
    u = 1.0 - s
    exponent = z * z / (2.0 * u) + 0.5 * alpha * alpha * u + z * alpha
    with np.errstate(over="ignore"):
        return np.sqrt(u) / beta * np.exp(exponent)


def rhs_denominator_dimensionless(z: float, s: float, dp: DimensionlessParams) -> float:
    """
    Scaled denominator (sqrt(1 - s) / beta) exp(d1^2 / 2) + 2.

    Equal to rhs_denominator under the (z, s) coordinate map.
    """
    if s >= 1:
        raise ExpirationReachedError(f"s={s!r}: expiration reached")
    if not dp.has_hedging_force:
        raise NoHedgingForceError("beta must be non-zero")
    return float(hedge_term(z, s, dp.alpha, dp.beta)) + 2.0
