"""
Straddle delta and its derivatives under Black-Scholes.

All functions work in minutes and per-sqrt-minute volatility. tau is the time left
to expiration; tau = 0 is outside the domain because d1 and both partials diverge there.
"""

import math

from scipy.special import ndtr

from app.core.exceptions import ExpirationReachedError
from app.models.params import ModelParams

INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)


def normal_cdf(x: float) -> float:
    """
    Standard normal cumulative distribution function N(x).

    Backed by scipy.special.ndtr (Cephes, built on erf/erfc), whose absolute error is
    a few ulp across the real line, far inside the 1e-10 this model needs.

    Args:
        x: Finite real argument

    Returns:
        Probability in [0, 1]
    """
    return float(ndtr(x))


def _check_state(price: float, tau: float) -> None:
    if tau <= 0:
        raise ExpirationReachedError(f"tau={tau!r} minutes: expiration reached")
    if not price > 0:
        raise ValueError(f"price must be positive, got {price!r}")


def d1(price: float, tau: float, params: ModelParams) -> float:
    """
    Black-Scholes d1 for the straddle.

    Args:
        price: Spot price S
        tau: Minutes to expiration
        params: Model parameters

    Returns:
        (ln(S/K) + (mu + sigma^2/2) tau) / (sigma sqrt(tau))
    """
    _check_state(price, tau)
    drift = params.mu + 0.5 * params.sigma**2
    return (math.log(price / params.strike) + drift * tau) / (params.sigma * math.sqrt(tau))


def d1_dimensionless(z: float, s: float, alpha: float) -> float:
    """d1 in scaled coordinates: z / sqrt(1 - s) + alpha sqrt(1 - s)."""
    if s >= 1:
        raise ExpirationReachedError(f"s={s!r}: expiration reached")
    if s < 0:
        raise ValueError(f"s must be non-negative, got {s!r}")
    root = math.sqrt(1.0 - s)
    return z / root + alpha * root


def straddle_delta(price: float, tau: float, params: ModelParams) -> float:
    """Delta of one straddle, 2 N(d1) - 1."""
    return 2.0 * normal_cdf(d1(price, tau, params)) - 1.0


def _density(x: float) -> float:
    return INV_SQRT_2PI * math.exp(-0.5 * x * x)


def delta_time_partial(price: float, tau: float, params: ModelParams) -> float:
    """
    Partial derivative of the straddle delta with respect to calendar time.

    Args:
        price: Spot price S
        tau: Minutes to expiration
        params: Model parameters

    Returns:
        Rate of change of delta per minute at fixed price
    """
    x = d1(price, tau, params)
    sigma = params.sigma
    drift = params.mu + 0.5 * sigma**2
    log_moneyness = math.log(price / params.strike)
    return _density(x) * (
        log_moneyness / (sigma * tau**1.5) - drift / (sigma * math.sqrt(tau))
    )


def delta_price_partial_flow(
    price: float, tau: float, dS_dt: float, params: ModelParams
) -> float:
    """
    Price derivative of the straddle delta times the price velocity.

    Args:
        price: Spot price S
        tau: Minutes to expiration
        dS_dt: Price change per minute
        params: Model parameters

    Returns:
        Rate of change of delta per minute caused by the price move
    """
    x = d1(price, tau, params)
    return _density(x) * 2.0 / (params.sigma * math.sqrt(tau) * price) * dS_dt


def delta_total_derivative(
    price: float, tau: float, dS_dt: float, params: ModelParams
) -> float:
    """Total time derivative of delta: the time partial plus the price-driven term."""
    return delta_time_partial(price, tau, params) + delta_price_partial_flow(
        price, tau, dS_dt, params
    )
