"""
Hedging-feedback ODE in physical coordinates, used to cross-check the scaled form.
"""

from app.core.services.model_core.impact import price_velocity
from app.models.params import ModelParams

from .integrator import rk4_step


def integrate_physical(
    params: ModelParams,
    open_price: float,
    end_min: float,
    steps: int,
    start_min: float = 0.0,
) -> list[tuple[float, float]]:
    """
    RK4 on dS/dt from start_min to end_min.

    Args:
        params: Physical parameters
        open_price: Price at start_min
        end_min: Final time, strictly before the horizon
        steps: Number of fixed steps
        start_min: Initial time

    Returns:
        List of (minutes, price) at every node
    """
    if not start_min < end_min < params.horizon:
        raise ValueError("need start_min < end_min < horizon")

    def velocity(price, t):
        return price_velocity(price, params.horizon - t, params)

    h = (end_min - start_min) / steps
    price, t = open_price, start_min
    path = [(t, price)]
    for k in range(steps):
        price = rk4_step(velocity, price, t, h)
        t = start_min + (k + 1) * h
        path.append((t, price))
    return path
