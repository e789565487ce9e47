import json
import math
import os
import sys
import tempfile
import unittest
from pathlib import Path

import numpy as np
from scipy.stats import kstest, norm

# Add the backend directory to the path so we can import the app package
sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), "..", "backend")))

from app.core.services.dynamics import (  # noqa: E402
    analytic_limit,
    integrate,
    observed_order,
    rhs_corrected,
    rhs_original,
    rk4_solve,
    scan_denominator,
)
from app.core.services.dynamics.rhs import restoring_numerator  # noqa: E402
from app.core.services.empirical import (  # noqa: E402
    classify_flow,
    compute_hedge_series,
    ingest_csv,
)
from app.core.services.model_core import (  # noqa: E402
    delta_price_partial_flow,
    delta_time_partial,
    dimensionless_for_beta,
    map_state,
    straddle_delta,
)
from app.core.services.stochastic import run_ensemble, simulate_batch  # noqa: E402
from app.main import main  # noqa: E402
from app.models.ensemble import NoiseConfig  # noqa: E402
from app.models.params import ModelParams  # noqa: E402
from app.models.trajectory import OdeConfig, Termination  # noqa: E402

FIXTURES = Path(__file__).resolve().parent.parent / "backend" / "tests" / "fixtures"

STRIKE = 500.0
OPEN_PRICE = 498.34
SIGMA = 1.102e-3
HORIZON = 360.0
END_MIN = 357.0


class AcceptanceCase(unittest.TestCase):
    """Market instance of the January 18, 2013 close."""

    def setUp(self):
        self.params = ModelParams(strike=STRIKE, sigma=SIGMA, mu=0.0, horizon=HORIZON)
        self.flat = ModelParams(strike=STRIKE, sigma=SIGMA, mu=-0.5 * SIGMA**2, horizon=HORIZON)
        self.z_open = map_state(OPEN_PRICE, 0.0, self.params).z
        self.day = OdeConfig(s_end=END_MIN / HORIZON, z_start=self.z_open, steps=357)


class TestInfiniteElasticityPinning(AcceptanceCase):
    def test_closed_form_pins_and_matches_rk4(self):
        rng = np.random.default_rng(2013)
        z0 = rng.uniform(-1.0, 1.0, 100)
        s0 = rng.uniform(0.0, 0.95, 100)
        alpha = rng.uniform(-1.0, 1.0, 100)

        for z, s, a in zip(z0, s0, alpha):
            self.assertEqual(analytic_limit(z, s, 1.0, a), 0.0)

        numeric = rk4_solve(
            lambda z, s: 0.5 * restoring_numerator(z, s, alpha), z0, s0, 0.99, 10000
        )
        exact = [analytic_limit(z, s, 0.99, a) for z, s, a in zip(z0, s0, alpha)]
        np.testing.assert_allclose(numeric, exact, rtol=0, atol=1e-8)


class TestCorrectedIsWeaker(AcceptanceCase):
    def test_dominance_grid(self):
        zs = np.linspace(-1.0, 1.0, 50)
        ss = np.linspace(0.0, 0.95, 50)
        for beta in (0.1, 1.0, 10.0):
            dp = dimensionless_for_beta(self.params, beta)
            strict = total = 0
            for z in zs:
                for s in ss:
                    corrected = abs(rhs_corrected(z, s, dp))
                    original = abs(rhs_original(z, s, dp))
                    self.assertLessEqual(corrected, original)
                    if restoring_numerator(z, s, dp.alpha) != 0.0:
                        total += 1
                        strict += corrected < original
            self.assertGreaterEqual(strict / total, 0.99)


class TestDeterministicPinningCurve(AcceptanceCase):
    def test_strong_hedging_follows_closed_form(self):
        dp = dimensionless_for_beta(self.params, 1e6)
        traj = integrate(self.day, dp)
        self.assertEqual(traj.termination, Termination.COMPLETED)
        limit_z = analytic_limit(self.z_open, 0.0, self.day.s_end, dp.alpha)
        limit_price = STRIKE * math.exp(limit_z * dp.log_scale)
        # Three minutes before expiration the pinned curve is still about $0.14 below
        self.assertAlmostEqual(traj.final.price, limit_price, delta=0.005)
        self.assertLess(abs(traj.final.price - STRIKE), 0.15)

    def test_no_hedging_is_constant(self):
        traj = integrate(self.day, dimensionless_for_beta(self.params, 0.0))
        for sample in traj.samples:
            self.assertAlmostEqual(sample.price, OPEN_PRICE, places=10)


class TestPinProbability(AcceptanceCase):
    def test_default_ensemble_rarely_pins(self):
        dp = dimensionless_for_beta(self.params, 1.0)
        noise = NoiseConfig(noise_ratio=1.0, seed=42, runs=5000)
        stats = run_ensemble(self.day, dp, noise, 0.005)
        self.assertEqual(stats.runs, 5000)
        self.assertLessEqual(stats.pin_probability, 0.002)
        self.assertLessEqual(stats.wilson_interval[1], 0.004)


class TestBrownianBaseline(AcceptanceCase):
    def test_unhedged_endpoint_is_normal(self):
        dp = dimensionless_for_beta(self.params, 0.0)
        noise = NoiseConfig(noise_ratio=1.0, seed=7, runs=5000)
        z = simulate_batch(self.day, dp, noise, range(noise.runs)).z_final
        reference = norm(loc=self.z_open, scale=math.sqrt(self.day.s_end))
        self.assertGreater(kstest(z, reference.cdf).pvalue, 0.01)


class TestHedgeFlowDiagnostic(AcceptanceCase):
    def test_final_hour_rise(self):
        with (FIXTURES / "final_hour_rise.csv").open("rb") as handle:
            path = ingest_csv(handle, name="final_hour_rise.csv")
        series = compute_hedge_series(path, self.params.model_copy(update={"position": 1.0}))
        positions = [r.hedge_position for r in series.records]
        self.assertTrue(all(b < a for a, b in zip(positions, positions[1:])))

        diagnostic = classify_flow(series, (300.0, 359.0))
        self.assertEqual(diagnostic.classification.value, "SELL")
        self.assertEqual(diagnostic.price_direction.value, "UP")
        self.assertTrue(diagnostic.opposes_move)


class TestGradients(AcceptanceCase):
    def test_delta_partials_match_finite_differences(self):
        for ratio in (0.97, 0.99, 1.0, 1.01, 1.03):
            for tau in (1.0, 30.0, 360.0):
                price = ratio * STRIKE
                h = 1e-3 * min(1.0, tau / 10)
                fd_time = (
                    straddle_delta(price, tau - h, self.params)
                    - straddle_delta(price, tau + h, self.params)
                ) / (2 * h)
                fd_price = (
                    straddle_delta(price + 1e-4, tau, self.params)
                    - straddle_delta(price - 1e-4, tau, self.params)
                ) / 2e-4
                analytic_time = delta_time_partial(price, tau, self.params)
                analytic_price = delta_price_partial_flow(price, tau, 1.0, self.params)
                self.assertLessEqual(abs(analytic_time - fd_time), 1e-6 * abs(fd_time) + 1e-10)
                self.assertLessEqual(abs(analytic_price - fd_price), 1e-6 * abs(fd_price) + 1e-10)


class TestSingularityDetection(AcceptanceCase):
    def test_cancellation_is_localized(self):
        # d1 = 0 slice: denominator 2 - 4 sqrt(1 - s) vanishes at s = 0.75
        dp = dimensionless_for_beta(self.flat, -0.25)
        grid = [k * 0.99 / 99 for k in range(100)]
        (row,) = scan_denominator(dp, [-0.25], grid, 0.0).rows
        self.assertLess(abs(row.s_star - 0.75), 1e-9)

        traj = integrate(OdeConfig(s_end=0.9, z_start=0.0, steps=400), dp)
        self.assertEqual(traj.termination, Termination.SINGULARITY_DETECTED)
        self.assertLess(abs(traj.singular_s - 0.75), 1e-9)


class TestConvergenceOrder(AcceptanceCase):
    def test_rk4_is_fourth_order(self):
        dp = dimensionless_for_beta(self.params, 1.0)
        ends = [
            integrate(OdeConfig(s_end=0.5, z_start=-1.0, steps=n), dp).final.z
            for n in (20, 40, 80)
        ]
        order = observed_order(*ends)
        self.assertGreaterEqual(order, 3.7)
        self.assertLessEqual(order, 4.3)


class TestReproducibility(unittest.TestCase):
    COMMANDS = [
        ["simulate", "--beta=0.1", "--beta=1e6"],
        ["simulate", "--beta=0.1", "--mode=original", "--end-min=300", "--steps=300"],
        ["ensemble", "--runs=200", "--noise-ratio=0.5"],
        ["analytic", "--format=json"],
        ["hedge-demand", f"--input={FIXTURES / 'final_hour_fall.csv'}"],
        ["singularity-scan", "--beta=-0.2", "--beta=-0.4"],
    ]

    def test_replay_is_byte_identical(self):
        for argv in self.COMMANDS:
            with self.subTest(command=argv[0]), tempfile.TemporaryDirectory() as tmp:
                manifest = Path(tmp) / "manifest.json"
                output = Path(tmp) / "output"
                self.assertEqual(main([*argv, f"--output={output}", f"--manifest={manifest}"]), 0)
                report = Path(tmp) / "report.json"
                self.assertEqual(main(["replay", str(manifest), f"--output={report}"]), 0)
                result = json.loads(report.read_text())
                self.assertTrue(result["reproduced"])
                self.assertTrue(all(o["match"] for o in result["outputs"].values()))


if __name__ == "__main__":
    unittest.main()
