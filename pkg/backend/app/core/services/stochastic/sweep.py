from itertools import product

from loguru import logger

from app.core.exceptions import PinsimError
from app.models.ensemble import NoiseConfig, SweepRow
from app.models.params import DimensionlessParams
from app.models.trajectory import OdeConfig

from .ensemble import run_ensemble


def pin_probability_sweep(
    config: OdeConfig,
    dp_grid: list[DimensionlessParams],
    noise_grid: list[NoiseConfig],
    pin_tolerance: float,
    workers: int | None = None,
) -> list[SweepRow]:
    """
    One ensemble per (beta, noise) cell.

    Cells share nothing, so each row equals a stand-alone run_ensemble call on the
    same inputs. A failing cell becomes a row carrying its error; the sweep goes on.

    Args:
        config: Window and step count
        dp_grid: Scaled parameter sets (one per beta)
        noise_grid: Noise settings (one per noise ratio)
        pin_tolerance: Pin band half-width in dollars
        workers: Worker threads per ensemble

    Returns:
        Rows in beta-major order
    """
    rows: list[SweepRow] = []
    for dp, noise in product(dp_grid, noise_grid):
        try:
            stats = run_ensemble(config, dp, noise, pin_tolerance, workers=workers)
            rows.append(SweepRow(beta=dp.beta, noise_ratio=noise.noise_ratio, stats=stats))
        except (PinsimError, ValueError) as e:
            logger.warning(f"Sweep cell beta={dp.beta} rho={noise.noise_ratio} failed: {e}")
            rows.append(SweepRow(beta=dp.beta, noise_ratio=noise.noise_ratio, error=str(e)))
    return rows
