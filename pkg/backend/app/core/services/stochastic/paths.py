"""
Euler-Maruyama paths of the hedging-feedback model with exogenous trading noise.

dz = rhs_corrected(z, s) ds + rho sqrt(ds) xi,  xi ~ N(0, 1)

Noise of relative size rho = sigma_noise / sigma enters the scaled coordinates as a
unit-variance Brownian increment times rho.
"""

import math
from dataclasses import dataclass

import numpy as np
from loguru import logger

from app.core.config import settings
from app.core.exceptions import UsageError
from app.core.services.dynamics.rhs import corrected_drift
from app.core.services.model_core.impact import hedge_term
from app.core.services.model_core.scaling import inverse_map
from app.models.ensemble import NoiseConfig
from app.models.params import DimensionlessParams
from app.models.trajectory import (
    IntegrationMode,
    OdeConfig,
    Termination,
    Trajectory,
    TrajectorySample,
)

from .streams import run_increments


@dataclass
class PathBatch:
    """Outcome of a block of runs; z_paths is only filled when recording."""

    run_indices: list[int]
    z_final: np.ndarray
    singular: np.ndarray
    last_step: np.ndarray
    z_paths: np.ndarray | None = None


def _crossed(d_prev: np.ndarray, d_next: np.ndarray) -> np.ndarray:
    return np.isnan(d_next) | (d_next == 0.0) | ((d_next > 0) != (d_prev > 0))


def simulate_batch(
    config: OdeConfig,
    dp: DimensionlessParams,
    noise: NoiseConfig,
    run_indices,
    record: bool = False,
) -> PathBatch:
    """
    Simulate a block of runs at once.

    A path whose hedging denominator changes sign (short hedger) or whose state stops
    being finite is frozen at its last good value and flagged singular.

    Args:
        config: Window and step count (corrected mode)
        dp: Scaled parameters
        noise: Noise ratio and seed
        run_indices: Run numbers in this block
        record: Keep every intermediate state

    Returns:
        PathBatch
    """
    if config.mode != IntegrationMode.CORRECTED:
        raise UsageError("noisy paths are defined for the corrected model only")
    run_indices = [int(r) for r in run_indices]
    n = len(run_indices)
    xi = run_increments(noise.seed, run_indices, config.steps)
    rho = noise.noise_ratio
    watch = dp.beta < 0

    z = np.full(n, float(config.z_start))
    alive = np.ones(n, dtype=bool)
    last_step = np.full(n, config.steps)
    z_paths = np.empty((n, config.steps + 1)) if record else None
    if record:
        z_paths[:, 0] = z

    s = config.s_start
    for k in range(config.steps):
        s_next = config.grid(k + 1)
        h = s_next - s
        drift, d_prev = corrected_drift(z, s, dp.alpha, dp.beta)
        z_next = z + drift * h + rho * math.sqrt(h) * xi[:, k]
        bad = ~np.isfinite(z_next)
        if watch:
            with np.errstate(invalid="ignore"):
                d_next = hedge_term(z_next, s_next, dp.alpha, dp.beta) + 2.0
            bad |= _crossed(d_prev, d_next)
        newly = alive & bad
        if newly.any():
            last_step[newly] = k
            alive &= ~newly
        z = np.where(alive, z_next, z)
        if record:
            z_paths[:, k + 1] = z
        s = s_next

    return PathBatch(
        run_indices=run_indices,
        z_final=z,
        singular=~alive,
        last_step=last_step,
        z_paths=z_paths,
    )


def _refine_crossing(z: float, z_next: float, s: float, h: float, dp: DimensionlessParams) -> float:
    """Bisect along the straight step from (s, z) to (s + h, z_next)."""

    def denominator(theta):
        return float(hedge_term(z + theta * (z_next - z), s + theta * h, dp.alpha, dp.beta)) + 2.0

    d_left = denominator(0.0)
    lo, hi = 0.0, 1.0
    while (hi - lo) * h > settings.singularity_tolerance:
        mid = 0.5 * (lo + hi)
        d_mid = denominator(mid)
        if not math.isnan(d_mid) and d_mid != 0.0 and (d_mid > 0) == (d_left > 0):
            lo = mid
        else:
            hi = mid
    return s + 0.5 * (lo + hi) * h


def simulate_noisy_path(
    config: OdeConfig, dp: DimensionlessParams, noise: NoiseConfig, run_index: int
) -> Trajectory:
    """
    One noisy path, reproducible from (seed, run_index) alone.

    Args:
        config: Window and step count (corrected mode)
        dp: Scaled parameters
        noise: Noise ratio and seed
        run_index: Run number selecting the random stream

    Returns:
        Trajectory ending at s_end, or at the last state before a singularity
    """
    batch = simulate_batch(config, dp, noise, [run_index], record=True)
    last = int(batch.last_step[0])
    z_row = batch.z_paths[0]
    samples = []
    for k in range(last + 1):
        s = config.grid(k)
        price, t_min = inverse_map(float(z_row[k]), s, dp)
        samples.append(TrajectorySample(s=s, z=float(z_row[k]), t_min=t_min, price=price))

    termination = Termination.COMPLETED
    singular_s = None
    if batch.singular[0]:
        # Replay the failing step to report where the crossing happened
        xi = run_increments(noise.seed, [run_index], config.steps)[0, last]
        s, s_next = config.grid(last), config.grid(last + 1)
        z = float(z_row[last])
        drift, _ = corrected_drift(np.array([z]), s, dp.alpha, dp.beta)
        z_next = z + float(drift[0]) * (s_next - s) + noise.noise_ratio * math.sqrt(s_next - s) * xi
        if math.isfinite(z_next):
            termination = Termination.SINGULARITY_DETECTED
            singular_s = _refine_crossing(z, z_next, s, s_next - s, dp)
        else:
            termination = Termination.STEP_REJECTED
        logger.debug(f"Run {run_index} stopped at s={s}: {termination.value}")

    return Trajectory(
        samples=samples,
        termination=termination,
        singular_s=singular_s,
        beta=dp.beta,
        mode=config.mode,
    )
