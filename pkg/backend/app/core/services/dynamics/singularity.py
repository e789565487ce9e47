"""
Scan of the hedging-feedback denominator for cancellations (short hedgers).
"""

import math

from loguru import logger
from scipy.optimize import brentq

from app.core.config import settings
from app.core.services.model_core.impact import hedge_term
from app.models.params import DimensionlessParams
from app.models.trajectory import SingularityCell, SingularityRow, SingularityScan


def _sign(x: float) -> int:
    return (x > 0) - (x < 0)


def scan_denominator(
    dp: DimensionlessParams,
    betas: list[float],
    s_grid: list[float],
    z: float,
    tolerance: float | None = None,
) -> SingularityScan:
    """
    Denominator sign over a (beta, s) grid at fixed log-moneyness z.

    For each beta the first sign change between neighbouring grid points is refined
    with Brent's method. A positive beta can never cancel and is reported as such.

    Args:
        dp: Scaled parameters supplying alpha (beta is taken from betas)
        betas: Hedging impacts to scan
        s_grid: Increasing dimensionless times in [0, 1)
        z: Frozen log-moneyness of the slice
        tolerance: Root tolerance in s

    Returns:
        Cells for every (beta, s) and one summary row per beta
    """
    tolerance = settings.singularity_tolerance if tolerance is None else tolerance
    cells: list[SingularityCell] = []
    rows: list[SingularityRow] = []

    for beta in betas:
        if beta == 0:
            rows.append(SingularityRow(beta=beta, note="no hedging force"))
            continue

        def denominator(s, beta=beta):
            return float(hedge_term(z, s, dp.alpha, beta)) + 2.0

        values = [denominator(s) for s in s_grid]
        cells.extend(
            SingularityCell(beta=beta, s=s, denominator=d, sign=_sign(d))
            for s, d in zip(s_grid, values)
        )
        if beta > 0:
            rows.append(SingularityRow(beta=beta, note="no singularity possible"))
            continue

        s_star = None
        for k, d in enumerate(values):
            if d == 0.0:
                s_star = s_grid[k]
                break
            if k and _sign(d) != _sign(values[k - 1]) and math.isfinite(d):
                s_star = brentq(denominator, s_grid[k - 1], s_grid[k], xtol=tolerance / 10)
                break
        if s_star is None:
            rows.append(SingularityRow(beta=beta, note="no sign change on grid"))
        else:
            logger.info(f"Denominator cancels at s*={s_star:.12f} for beta={beta}")
            rows.append(SingularityRow(beta=beta, s_star=s_star, note="singular"))

    return SingularityScan(z=z, cells=cells, rows=rows)
