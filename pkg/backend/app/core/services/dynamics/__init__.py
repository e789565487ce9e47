"""
Deterministic evolution of the hedging-feedback model.
"""

from .analytic import analytic_curve, analytic_limit
from .hedging import hedge_fraction_series
from .integrator import euler_step, integrate, observed_order, rk4_solve, rk4_step
from .physical import integrate_physical
from .rhs import (
    RHS_BY_MODE,
    corrected_drift,
    rhs_corrected,
    rhs_infinite_elasticity,
    rhs_original,
)
from .singularity import scan_denominator

__all__ = [
    "RHS_BY_MODE",
    "analytic_curve",
    "analytic_limit",
    "corrected_drift",
    "euler_step",
    "hedge_fraction_series",
    "integrate",
    "integrate_physical",
    "observed_order",
    "rhs_corrected",
    "rhs_infinite_elasticity",
    "rhs_original",
    "rk4_solve",
    "rk4_step",
    "scan_denominator",
]
