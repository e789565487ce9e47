import math

from scipy.stats import norm

from app.models.params import DimensionlessParams


def wilson_interval(successes: int, trials: int, confidence: float = 0.95) -> tuple[float, float]:
    """
    Wilson score interval for a binomial proportion.

    Args:
        successes: Number of successes
        trials: Number of trials, at least 1
        confidence: Two-sided confidence level

    Returns:
        (lo, hi), always containing successes / trials
    """
    if trials < 1 or not 0 <= successes <= trials:
        raise ValueError(f"invalid counts {successes}/{trials}")
    q = norm.ppf(0.5 + confidence / 2.0)
    p = successes / trials
    scale = 1.0 + q * q / trials
    center = (p + q * q / (2.0 * trials)) / scale
    half = q * math.sqrt(p * (1.0 - p) / trials + q * q / (4.0 * trials * trials)) / scale
    return min(max(0.0, center - half), p), max(min(1.0, center + half), p)


def chance_pin_probability(
    z0: float,
    s0: float,
    s_end: float,
    noise_ratio: float,
    dp: DimensionlessParams,
    tolerance: float,
) -> float:
    """
    Probability of closing within tolerance of the strike with no hedging at all.

    Without hedging z(s_end) is normal with mean z0 and variance rho^2 (s_end - s0).

    Args:
        z0: Initial log-moneyness
        s0: Initial time
        s_end: Final time
        noise_ratio: rho
        dp: Scaled parameters (strike and scale)
        tolerance: Pin band half-width in dollars

    Returns:
        Probability in [0, 1]
    """
    upper = math.log1p(tolerance / dp.strike) / dp.log_scale
    lower = (
        math.log1p(-tolerance / dp.strike) / dp.log_scale if tolerance < dp.strike else -math.inf
    )
    if noise_ratio == 0:
        return 1.0 if lower <= z0 <= upper else 0.0
    sd = noise_ratio * math.sqrt(s_end - s0)
    return float(norm.cdf(upper, loc=z0, scale=sd) - norm.cdf(lower, loc=z0, scale=sd))
