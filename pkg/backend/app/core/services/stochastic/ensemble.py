"""
Monte Carlo estimate of the probability that the close pins to the strike.
"""

import numpy as np
from loguru import logger

from app.core.config import settings
from app.core.performance import chunked, map_in_pool, measure_performance
from app.models.ensemble import EnsembleStats, NoiseConfig
from app.models.params import DimensionlessParams
from app.models.trajectory import OdeConfig

from .paths import PathBatch, simulate_batch
from .statistics import chance_pin_probability, wilson_interval


@measure_performance
def run_ensemble(
    config: OdeConfig,
    dp: DimensionlessParams,
    noise: NoiseConfig,
    pin_tolerance: float,
    workers: int | None = None,
    chunk_size: int | None = None,
) -> EnsembleStats:
    """
    Simulate noise.runs independent paths and count closes within the pin band.

    Runs are split into fixed blocks that may execute on several threads; blocks are
    reassembled in run order, so the statistics do not depend on workers.

    Args:
        config: Window and step count (corrected mode)
        dp: Scaled parameters
        noise: Noise ratio, seed and run count
        pin_tolerance: A close with |S - K| <= pin_tolerance pins
        workers: Worker threads (defaults to settings.max_workers)
        chunk_size: Runs per block (defaults to settings.chunk_size)

    Returns:
        EnsembleStats; singular paths never count as pinned
    """
    workers = settings.max_workers if workers is None else workers
    chunk_size = settings.chunk_size if chunk_size is None else chunk_size
    blocks = chunked(range(noise.runs), chunk_size)

    def run_block(block) -> PathBatch:
        return simulate_batch(config, dp, noise, block)

    batches = map_in_pool(run_block, blocks, workers)
    z_final = np.concatenate([b.z_final for b in batches])
    singular = np.concatenate([b.singular for b in batches])

    with np.errstate(over="ignore"):
        closes = dp.strike * np.exp(z_final * dp.log_scale)
    pinned = (np.abs(closes - dp.strike) <= pin_tolerance) & ~singular
    pin_count = int(pinned.sum())
    singular_count = int(singular.sum())
    runs = noise.runs

    baseline = chance_pin_probability(
        config.z_start, config.s_start, config.s_end, noise.noise_ratio, dp, pin_tolerance
    )
    logger.info(
        f"Ensemble beta={dp.beta} rho={noise.noise_ratio}: {pin_count}/{runs} pinned, "
        f"{singular_count} singular"
    )
    return EnsembleStats(
        runs=runs,
        closing_prices=[float(c) for c in closes],
        pin_count=pin_count,
        pin_probability=pin_count / runs,
        wilson_interval=wilson_interval(pin_count, runs),
        pin_tolerance=pin_tolerance,
        singular_count=singular_count,
        mean_close=float(np.mean(closes)),
        std_close=float(np.std(closes, ddof=1)) if runs > 1 else 0.0,
        baseline_pin_probability=baseline,
    )
