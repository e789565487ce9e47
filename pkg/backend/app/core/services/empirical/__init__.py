"""
Empirical hedge-demand diagnostic on intraday prices.
"""

from .flow import classify_flow
from .hedge_series import (
    HEDGE_SERIES_COLUMNS,
    compute_hedge_series,
    emit_hedge_series_csv,
    hedge_series_from_points,
)
from .ingest import emit_csv, ingest_csv
from .synthetic import synthetic_gbm, synthetic_ramp
from .volatility import realized_volatility

__all__ = [
    "HEDGE_SERIES_COLUMNS",
    "classify_flow",
    "compute_hedge_series",
    "emit_csv",
    "emit_hedge_series_csv",
    "hedge_series_from_points",
    "ingest_csv",
    "realized_volatility",
    "synthetic_gbm",
    "synthetic_ramp",
]
