"""
Fixed-step integration of the scaled hedging-feedback ODE.
"""

import math
from collections.abc import Callable

import numpy as np
from loguru import logger

from app.core.config import settings
from app.core.exceptions import SingularityError
from app.core.performance import measure_performance
from app.core.services.model_core.impact import hedge_term
from app.core.services.model_core.scaling import inverse_map
from app.models.params import DimensionlessParams
from app.models.trajectory import (
    IntegrationMode,
    OdeConfig,
    Termination,
    Trajectory,
    TrajectorySample,
)

from .rhs import RHS_BY_MODE

Slope = Callable[[float, float], float]


def rk4_step(f, z, s, h):
    """One classical fourth-order Runge-Kutta step; works on floats and numpy arrays."""
    k1 = f(z, s)
    k2 = f(z + 0.5 * h * k1, s + 0.5 * h)
    k3 = f(z + 0.5 * h * k2, s + 0.5 * h)
    k4 = f(z + h * k3, s + h)
    return z + h * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0


def euler_step(f, z, s, h):
    return z + h * f(z, s)


STEPPERS = {"rk4": rk4_step, "euler": euler_step}


def rk4_solve(f, z0, s0, s1, steps: int):
    """
    Integrate dz/ds = f(z, s) with fixed-step RK4.

    z0, s0 and s1 may be numpy arrays of independent problems sharing one step
    count; nodes are s0 + k h with h = (s1 - s0) / steps.

    Args:
        f: Vectorizable right-hand side f(z, s)
        z0: Initial values
        s0: Initial times
        s1: Final times
        steps: Number of steps

    Returns:
        z at s1
    """
    z = np.asarray(z0, dtype=float)
    s0 = np.asarray(s0, dtype=float)
    h = (np.asarray(s1, dtype=float) - s0) / steps
    for k in range(steps):
        z = rk4_step(f, z, s0 + k * h, h)
    return z if z.ndim else float(z)


def observed_order(coarse: float, medium: float, fine: float) -> float:
    """Self-convergence order from endpoints at step sizes h, h/2 and h/4."""
    return math.log2(abs(coarse - medium) / abs(medium - fine))


def _denominator(z: float, s: float, dp: DimensionlessParams) -> float:
    return float(hedge_term(z, s, dp.alpha, dp.beta)) + 2.0


def _same_side(value: float, reference: float) -> bool:
    # Overflow to +/-inf keeps its sign; only nan, zero or a flip is a crossing
    return not math.isnan(value) and value != 0.0 and (value > 0) == (reference > 0)


def _locate_singularity(
    stepper,
    f: Slope,
    z: float,
    s: float,
    h: float,
    d_left: float,
    dp: DimensionlessParams,
    tolerance: float,
) -> float:
    """Bisect the sub-step length until the denominator sign change is bracketed."""
    lo, hi = 0.0, h
    while hi - lo > tolerance:
        mid = 0.5 * (lo + hi)
        try:
            d_mid = _denominator(stepper(f, z, s, mid), s + mid, dp)
        except SingularityError:
            d_mid = math.nan
        if _same_side(d_mid, d_left):
            lo = mid
        else:
            hi = mid
    return s + 0.5 * (lo + hi)


def _samples(ss: list[float], zs: list[float], dp: DimensionlessParams) -> list[TrajectorySample]:
    samples = []
    for s, z in zip(ss, zs):
        price, t_min = inverse_map(z, s, dp)
        samples.append(TrajectorySample(s=s, z=z, t_min=t_min, price=price))
    return samples


@measure_performance
def integrate(config: OdeConfig, dp: DimensionlessParams) -> Trajectory:
    """
    Integrate the selected model variant over the configured window.

    In corrected mode with beta < 0 the denominator is watched between steps; a sign
    change ends the run with singularity_detected and the crossing refined by
    bisection. A non-finite state ends it with step_rejected.

    Args:
        config: Window, initial value, step count, mode and scheme
        dp: Scaled parameters

    Returns:
        Trajectory in both coordinate systems
    """
    rhs = RHS_BY_MODE[config.mode]

    def f(z, s):
        return rhs(z, s, dp)

    stepper = STEPPERS[config.scheme]
    watch = config.mode == IntegrationMode.CORRECTED and dp.beta < 0

    z, s = config.z_start, config.s_start
    zs, ss = [z], [s]
    termination = Termination.COMPLETED
    singular_s = None

    d_prev = _denominator(z, s, dp) if watch else None
    if watch and d_prev == 0.0:
        termination, singular_s = Termination.SINGULARITY_DETECTED, s
    steps = config.steps if termination == Termination.COMPLETED else 0

    for k in range(steps):
        s_next = config.grid(k + 1)
        h = s_next - s
        try:
            z_next = stepper(f, z, s, h)
        except SingularityError:
            z_next = math.nan

        if watch:
            d_next = _denominator(z_next, s_next, dp) if math.isfinite(z_next) else math.nan
            if not _same_side(d_next, d_prev):
                singular_s = _locate_singularity(
                    stepper, f, z, s, h, d_prev, dp, settings.singularity_tolerance
                )
                termination = Termination.SINGULARITY_DETECTED
                break
            d_prev = d_next

        if not math.isfinite(z_next):
            termination = Termination.STEP_REJECTED
            break
        z, s = z_next, s_next
        zs.append(z)
        ss.append(s)

    if termination == Termination.SINGULARITY_DETECTED:
        logger.warning(f"Singular denominator at s*={singular_s:.12f} (beta={dp.beta})")
    elif termination == Termination.STEP_REJECTED:
        logger.warning(f"Non-finite state after s={s} (beta={dp.beta}); trajectory truncated")
    else:
        logger.debug(f"Integrated {config.mode.value} to s={s} in {config.steps} steps")

    return Trajectory(
        samples=_samples(ss, zs, dp),
        termination=termination,
        singular_s=singular_s,
        beta=dp.beta,
        mode=config.mode,
    )
