"""
Closed-form mathematics of the hedging-feedback model.
"""

from .greeks import (
    d1,
    d1_dimensionless,
    delta_price_partial_flow,
    delta_time_partial,
    delta_total_derivative,
    normal_cdf,
    straddle_delta,
)
from .impact import (
    hedge_term,
    price_impact,
    price_velocity,
    rhs_denominator,
    rhs_denominator_dimensionless,
)
from .scaling import dimensionless_for_beta, inverse_map, map_state, to_dimensionless

__all__ = [
    "d1",
    "d1_dimensionless",
    "delta_price_partial_flow",
    "delta_time_partial",
    "delta_total_derivative",
    "dimensionless_for_beta",
    "hedge_term",
    "inverse_map",
    "map_state",
    "normal_cdf",
    "price_impact",
    "price_velocity",
    "rhs_denominator",
    "rhs_denominator_dimensionless",
    "straddle_delta",
    "to_dimensionless",
]
