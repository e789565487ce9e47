from app.core.services.empirical.hedge_series import hedge_series_from_points
from app.core.services.model_core.scaling import inverse_map
from app.models.empirical import HedgeSeries
from app.models.params import DimensionlessParams, ModelParams
from app.models.trajectory import Trajectory


def hedge_fraction_series(
    traj: Trajectory, dp: DimensionlessParams, params: ModelParams
) -> HedgeSeries:
    """
    N(d1), straddle delta and hedge position along a simulated trajectory.

    Args:
        traj: Completed or truncated trajectory
        dp: Scaled parameters used to map samples back to (t, S)
        params: Physical parameters supplying mu and the position n

    Returns:
        One hedge record per trajectory sample
    """
    times, prices = [], []
    for sample in traj.samples:
        price, t = inverse_map(sample.z, sample.s, dp)
        times.append(t)
        prices.append(price)
    return hedge_series_from_points(times, prices, params)
