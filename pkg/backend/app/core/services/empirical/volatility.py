import numpy as np

from app.core.exceptions import InputDataError
from app.models.empirical import PricePath


def realized_volatility(path: PricePath) -> float:
    """
    Sample standard deviation of log returns, each scaled by 1/sqrt(elapsed minutes).

    Args:
        path: Price path with at least 3 points

    Returns:
        Volatility per sqrt-minute
    """
    if len(path.points) < 3:
        raise InputDataError(f"need at least 3 points, got {len(path.points)}")
    times = np.asarray(path.times)
    prices = np.asarray(path.prices)
    returns = np.diff(np.log(prices)) / np.sqrt(np.diff(times))
    return float(np.std(returns, ddof=1))
