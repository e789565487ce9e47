"""
Per-run random streams.

Run r of an ensemble seeded with k draws from Philox keyed by
SeedSequence(k, spawn_key=(r,)). The stream depends only on (k, r), so runs can be
simulated in any order, in any chunking and on any number of workers.
"""

import numpy as np


def run_generator(seed: int, run_index: int) -> np.random.Generator:
    """Counter-based generator for one run."""
    sequence = np.random.SeedSequence(seed, spawn_key=(run_index,))
    return np.random.Generator(np.random.Philox(sequence))


def run_increments(seed: int, run_indices, steps: int) -> np.ndarray:
    """
    Standard normal shocks for a block of runs.

    Args:
        seed: Ensemble seed
        run_indices: Run numbers, one row each
        steps: Shocks per run

    Returns:
        Array of shape (len(run_indices), steps)
    """
    rows = [run_generator(seed, int(r)).standard_normal(steps) for r in run_indices]
    return np.vstack(rows) if rows else np.empty((0, steps))
