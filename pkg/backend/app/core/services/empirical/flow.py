from app.core.config import settings
from app.core.exceptions import UsageError
from app.models.empirical import FlowClass, FlowDiagnostic, HedgeSeries, PriceDirection


def classify_flow(
    series: HedgeSeries,
    window: tuple[float, float],
    deadband: float | None = None,
    price_deadband: float | None = None,
) -> FlowDiagnostic:
    """
    Net hedging trade over a window and whether it worked against the price move.

    Args:
        series: Hedge series
        window: (t_lo, t_hi) in minutes, inclusive
        deadband: Net flow treated as FLAT, in shares; defaults to 1e-6 |n|
        price_deadband: Price change treated as FLAT, in dollars

    Returns:
        FlowDiagnostic; opposes_move is SELL into a rise or BUY into a fall
    """
    t_lo, t_hi = window
    inside = [r for r in series.records if t_lo <= r.time <= t_hi]
    if len(inside) < 2:
        raise UsageError(f"window {t_lo}:{t_hi} holds {len(inside)} points, need at least 2")

    if deadband is None:
        deadband = settings.flow_deadband * abs(series.position)
    if price_deadband is None:
        price_deadband = settings.price_deadband

    first, last = inside[0], inside[-1]
    net_flow = last.hedge_position - first.hedge_position
    price_change = last.price - first.price

    if net_flow > deadband:
        classification = FlowClass.BUY
    elif net_flow < -deadband:
        classification = FlowClass.SELL
    else:
        classification = FlowClass.FLAT

    if price_change > price_deadband:
        direction = PriceDirection.UP
    elif price_change < -price_deadband:
        direction = PriceDirection.DOWN
    else:
        direction = PriceDirection.FLAT

    opposes = (classification, direction) in {
        (FlowClass.SELL, PriceDirection.UP),
        (FlowClass.BUY, PriceDirection.DOWN),
    }
    return FlowDiagnostic(
        window=(t_lo, t_hi),
        net_flow=net_flow,
        price_change=price_change,
        classification=classification,
        price_direction=direction,
        opposes_move=opposes,
    )
