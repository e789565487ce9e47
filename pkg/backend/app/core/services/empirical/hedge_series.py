"""
Hedge position and hedge flow implied by a price path.
"""

from collections.abc import Sequence

import pandas as pd

from app.core.exceptions import ExpirationReachedError
from app.core.services.model_core.greeks import d1, normal_cdf
from app.models.empirical import HedgeRecord, HedgeSeries, PricePath
from app.models.params import ModelParams

HEDGE_SERIES_COLUMNS = ["t_min", "price", "d1", "N_d1", "delta", "hedge_position", "hedge_flow"]


def hedge_series_from_points(
    times: Sequence[float], prices: Sequence[float], params: ModelParams
) -> HedgeSeries:
    """
    Greeks, hedge position -n * delta and backward-difference flow at each point.

    Args:
        times: Increasing minutes since start, all before the horizon
        prices: Prices at those times
        params: Model parameters (position n is the straddle count)

    Returns:
        HedgeSeries with one record per point; the first flow is None
    """
    records: list[HedgeRecord] = []
    for t, price in zip(times, prices):
        tau = params.horizon - t
        if tau <= 0:
            raise ExpirationReachedError(
                f"point at t={t!r} min is at or beyond expiration ({params.horizon} min)"
            )
        x = d1(price, tau, params)
        cdf = normal_cdf(x)
        delta = 2.0 * cdf - 1.0
        position = -params.position * delta
        flow = None
        if records:
            previous = records[-1]
            flow = (position - previous.hedge_position) / (t - previous.time)
        records.append(
            HedgeRecord(
                time=t,
                price=price,
                d1=x,
                cdf_d1=cdf,
                straddle_delta=delta,
                hedge_position=position,
                hedge_flow=flow,
            )
        )
    return HedgeSeries(records=records, position=params.position)


def compute_hedge_series(path: PricePath, params: ModelParams) -> HedgeSeries:
    """Hedge series of an ingested or simulated price path."""
    return hedge_series_from_points(path.times, path.prices, params)


def emit_hedge_series_csv(series: HedgeSeries) -> str:
    """Hedge series CSV; the first row's flow field is empty."""
    frame = pd.DataFrame(
        [
            [r.time, r.price, r.d1, r.cdf_d1, r.straddle_delta, r.hedge_position, r.hedge_flow]
            for r in series.records
        ],
        columns=HEDGE_SERIES_COLUMNS,
        dtype=float,
    )
    return frame.to_csv(index=False, lineterminator="\n")
