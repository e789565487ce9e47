"""
Synthetic intraday paths used as bundled fixtures and in tests.

No market data ships with the package; these generators document exactly how every
fixture under backend/tests/fixtures was produced (see scripts/generate_fixtures.py).
"""

import numpy as np

from app.models.empirical import PricePath, PricePoint


def synthetic_ramp(
    start_price: float,
    end_price: float,
    t_start: float,
    t_end: float,
    points: int,
    decimals: int | None = 4,
) -> PricePath:
    """
    Price moving linearly between two values on an even time grid.

    Args:
        start_price: Price at t_start
        end_price: Price at t_end
        t_start: First time in minutes
        t_end: Last time in minutes
        points: Number of points
        decimals: Rounding applied to prices, None to keep full precision

    Returns:
        Simulated PricePath
    """
    times = np.linspace(t_start, t_end, points)
    prices = np.linspace(start_price, end_price, points)
    if decimals is not None:
        prices = np.round(prices, decimals)
    return PricePath(
        points=[PricePoint(time=float(t), price=float(p)) for t, p in zip(times, prices)],
        source="simulated",
    )


def synthetic_gbm(
    open_price: float,
    sigma: float,
    points: int,
    seed: int,
    dt: float = 1.0,
    decimals: int | None = 4,
) -> PricePath:
    """Driftless log-normal random walk with per-sqrt-minute volatility sigma."""
    rng = np.random.default_rng(seed)
    steps = sigma * np.sqrt(dt) * rng.standard_normal(points - 1)
    prices = open_price * np.exp(np.concatenate([[0.0], np.cumsum(steps)]))
    if decimals is not None:
        prices = np.round(prices, decimals)
    times = dt * np.arange(points)
    return PricePath(
        points=[PricePoint(time=float(t), price=float(p)) for t, p in zip(times, prices)],
        source="simulated",
    )
