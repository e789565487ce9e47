"""
Noisy price dynamics and Monte Carlo pin probabilities.
"""

from .ensemble import run_ensemble
from .paths import PathBatch, simulate_batch, simulate_noisy_path
from .statistics import chance_pin_probability, wilson_interval
from .streams import run_generator, run_increments
from .sweep import pin_probability_sweep

__all__ = [
    "PathBatch",
    "chance_pin_probability",
    "pin_probability_sweep",
    "run_ensemble",
    "run_generator",
    "run_increments",
    "simulate_batch",
    "simulate_noisy_path",
    "wilson_interval",
]
