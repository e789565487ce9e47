"""
Right-hand sides of the scaled hedging-feedback ODE dz/ds.
"""

import math
from collections.abc import Callable

import numpy as np

from app.core.exceptions import ExpirationReachedError, SingularityError
from app.core.services.model_core.impact import hedge_term
from app.models.params import DimensionlessParams
from app.models.trajectory import IntegrationMode

# |denominator| at or below this counts as an exact cancellation
SINGULAR_EPS = 1e-300

Rhs = Callable[[float, float, DimensionlessParams], float]


def _check_s(s: float) -> None:
    if s >= 1:
        raise ExpirationReachedError(f"s={s!r}: expiration reached")
    if s < 0:
        raise ValueError(f"s must be non-negative, got {s!r}")


def restoring_numerator(z, s, alpha: float):
    """alpha - z / (1 - s); zero on the instantaneous fixed point z = alpha (1 - s)."""
    return alpha - z / (1.0 - s)


def rhs_corrected(z: float, s: float, dp: DimensionlessParams) -> float:
    """
    Scaled ODE with both the time and the price dependence of the hedge.

    Args:
        z: Dimensionless log-moneyness
        s: Dimensionless time in [0, 1)
        dp: Scaled parameters; beta = 0 means no hedging force and returns 0

    Returns:
        dz/ds

    Raises:
        SingularityError: the denominator cancels (only possible for beta < 0)
    """
    _check_s(s)
    if not dp.has_hedging_force:
        return 0.0
    denominator = float(hedge_term(z, s, dp.alpha, dp.beta)) + 2.0
    if math.isinf(denominator):
        return 0.0
    if abs(denominator) <= SINGULAR_EPS or math.isnan(denominator):
        raise SingularityError(f"hedging denominator vanished at s={s!r}, z={z!r}", s=s)
    return restoring_numerator(z, s, dp.alpha) / denominator


def rhs_original(z: float, s: float, dp: DimensionlessParams) -> float:
    """
    Time-term-only variant: the same numerator over the hedge term without the +2.

    Keeps the corrected constant factors; only the price-driven feedback is dropped.
    """
    _check_s(s)
    if not dp.has_hedging_force:
        return 0.0
    term = float(hedge_term(z, s, dp.alpha, dp.beta))
    if math.isinf(term):
        return 0.0
    return restoring_numerator(z, s, dp.alpha) / term


def rhs_infinite_elasticity(z: float, s: float, dp: DimensionlessParams) -> float:
    """beta -> infinity limit, (alpha + z / (s - 1)) / 2."""
    _check_s(s)
    return 0.5 * restoring_numerator(z, s, dp.alpha)


RHS_BY_MODE: dict[IntegrationMode, Rhs] = {
    IntegrationMode.CORRECTED: rhs_corrected,
    IntegrationMode.ORIGINAL: rhs_original,
    IntegrationMode.INFINITE_ELASTICITY: rhs_infinite_elasticity,
}


def corrected_drift(z: np.ndarray, s: float, alpha: float, beta: float):
    """
    Vectorized corrected RHS over many paths at a common s.

    Returns:
        Tuple (drift, denominator); drift is 0 where the denominator is infinite and
        nan where it cancels, so callers can flag those paths.
    """
    if beta == 0:
        zeros = np.zeros_like(z)
        return zeros, np.full_like(z, np.inf)
    denominator = hedge_term(z, s, alpha, beta) + 2.0
    with np.errstate(divide="ignore", invalid="ignore"):
        drift = restoring_numerator(z, s, alpha) / denominator
    drift = np.where(np.isinf(denominator), 0.0, drift)
    drift = np.where(np.abs(denominator) <= SINGULAR_EPS, np.nan, drift)
    return drift, denominator
