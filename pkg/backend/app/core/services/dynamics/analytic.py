"""
Closed-form solution of the infinite-elasticity limit.

dz/ds = (alpha + z / (s - 1)) / 2 is linear. With u = 1 - s the homogeneous part is
z = C sqrt(u) and z = -alpha u is a particular solution, so through (s0, z0)

    z(s) = alpha (s - 1) + C sqrt(1 - s),   C = (z0 - alpha (s0 - 1)) / sqrt(1 - s0).

Both terms vanish at s = 1: the price pins exactly to the strike at expiration.
"""

import math

import numpy as np


def analytic_limit(z0: float, s0: float, s: float, alpha: float) -> float:
    """
    Infinite-elasticity trajectory through (s0, z0), evaluated at s.

    Args:
        z0: Initial dimensionless log-moneyness
        s0: Initial dimensionless time
        s: Evaluation time, s0 <= s <= 1
        alpha: Scaled drift

    Returns:
        z(s)
    """
    if not 0 <= s0 <= s <= 1:
        raise ValueError(f"need 0 <= s0 <= s <= 1, got s0={s0!r}, s={s!r}")
    if s == s0:
        return z0
    amplitude = (z0 - alpha * (s0 - 1.0)) / math.sqrt(1.0 - s0)
    return alpha * (s - 1.0) + amplitude * math.sqrt(1.0 - s)


def analytic_curve(z0: float, s0: float, s_grid, alpha: float) -> np.ndarray:
    """analytic_limit over an array of evaluation times."""
    s_grid = np.asarray(s_grid, dtype=float)
    if s_grid.size and (s_grid.min() < s0 or s_grid.max() > 1):
        raise ValueError("evaluation times must lie in [s0, 1]")
    amplitude = (z0 - alpha * (s0 - 1.0)) / math.sqrt(1.0 - s0)
    return alpha * (s_grid - 1.0) + amplitude * np.sqrt(1.0 - s_grid)
