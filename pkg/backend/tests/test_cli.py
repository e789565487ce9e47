import io
import json

import pandas as pd
import pytest

from app import __version__
from app.main import main

from .conftest import OPEN_PRICE, SIGMA, STRIKE

FLAT_MU = f"--mu={-0.5 * SIGMA**2!r}"


def _records(text):
    return pd.read_csv(io.StringIO(text), dtype=str, keep_default_na=False).to_dict("records")


def _csv(path):
    return _records(path.read_text())


def _json(path):
    return json.loads(path.read_text())


class TestApp:
    def test_version(self, capsys):
        assert main(["--version"]) == 0
        assert __version__ in capsys.readouterr().out

    @pytest.mark.parametrize(
        "argv",
        [
            [],
            ["no-such-command"],
            ["simulate", "--mode", "bogus"],
            ["simulate", "--position=1"],
            ["simulate", "--beta=1", "--position=1", "--elasticity=1e-4"],
            ["simulate", "--end-min=400"],
            ["simulate", "--sigma=-1"],
            ["ensemble", "--runs=0"],
            ["ensemble", "--paths=2"],
            ["hedge-demand"],
        ],
    )
    def test_usage_errors(self, argv):
        assert main(argv) == 2


class TestSimulate:
    def test_no_hedging_is_constant(self, tmp_path):
        out = tmp_path / "sim.csv"
        assert main(["simulate", "--beta=0", f"--output={out}"]) == 0
        rows = _csv(out)
        assert len(rows) == 358
        assert all(float(r["price"]) == pytest.approx(OPEN_PRICE, rel=1e-14) for r in rows)
        assert float(rows[-1]["t_min"]) == pytest.approx(357.0)

    def test_default_betas_to_stdout(self, capsys):
        assert main(["simulate"]) == 0
        rows = _records(capsys.readouterr().out)
        assert len(rows) == 4 * 358
        assert {float(r["beta"]) for r in rows} == {0.1, 1.0, 10.0, 1e6}

    def test_strong_hedging_closes_near_strike(self, tmp_path):
        out = tmp_path / "sim.json"
        assert main(["simulate", "--beta=1e6", "--format=json", f"--output={out}"]) == 0
        (traj,) = _json(out)["trajectories"]
        assert traj["termination"] == "completed"
        assert abs(traj["samples"][-1]["price"] - STRIKE) < 0.15

    def test_singular_exit_code(self, tmp_path):
        out = tmp_path / "sim.json"
        argv = ["simulate", "--beta=-0.25", "--open-price=500", FLAT_MU, "--format=json"]
        assert main([*argv, f"--output={out}"]) == 4
        (traj,) = _json(out)["trajectories"]
        assert traj["termination"] == "singularity_detected"
        assert traj["singular_s"] == pytest.approx(0.75, abs=1e-8)

    def test_short_hedger_far_from_strike_completes(self, tmp_path):
        out = tmp_path / "sim.json"
        argv = ["simulate", "--beta=-0.1", "--open-price=460", "--format=json"]
        assert main([*argv, f"--output={out}"]) == 0
        (traj,) = _json(out)["trajectories"]
        assert traj["termination"] == "completed"
        assert traj["singular_s"] is None

    def test_physical_impact_flags(self, tmp_path):
        out = tmp_path / "sim.csv"
        assert main(["simulate", "--position=2", "--elasticity=1e-4", f"--output={out}"]) == 0
        rows = _csv(out)
        assert len({r["beta"] for r in rows}) == 1
        assert float(rows[0]["beta"]) > 0


class TestEnsemble:
    def test_deterministic(self, tmp_path):
        outputs = []
        for name in ("a", "b"):
            out = tmp_path / f"{name}.json"
            closes = tmp_path / f"{name}.csv"
            argv = ["ensemble", "--runs=200", f"--output={out}", f"--closing-prices={closes}"]
            assert main(argv) == 0
            outputs.append((out.read_bytes(), closes.read_bytes()))
        assert outputs[0] == outputs[1]

    def test_summary_fields(self, tmp_path):
        out = tmp_path / "stats.json"
        assert main(["ensemble", "--runs=100", "--seed=3", f"--output={out}"]) == 0
        stats = _json(out)
        assert stats["runs"] == 100
        assert stats["seed"] == 3
        assert "closing_prices" not in stats
        lo, hi = stats["wilson_interval"]
        assert lo <= stats["pin_probability"] <= hi

    def test_single_noiseless_run_matches_euler_simulation(self, tmp_path):
        closes = tmp_path / "closes.csv"
        sim = tmp_path / "sim.csv"
        argv = ["ensemble", "--runs=1", "--noise-ratio=0", f"--closing-prices={closes}"]
        assert main([*argv, f"--output={tmp_path / 'e.json'}"]) == 0
        assert main(["simulate", "--beta=1", "--scheme=euler", f"--output={sim}"]) == 0
        (close,) = _csv(closes)
        assert float(close["close"]) == pytest.approx(float(_csv(sim)[-1]["price"]), rel=1e-12)

    def test_sweep(self, tmp_path):
        out = tmp_path / "sweep.json"
        argv = [
            "ensemble",
            "--beta=1",
            "--beta=10",
            "--noise-ratio=0.5",
            "--noise-ratio=1",
            "--runs=50",
            f"--output={out}",
        ]
        assert main(argv) == 0
        payload = _json(out)
        assert payload["seed"] == 42
        assert [(r["beta"], r["noise_ratio"]) for r in payload["rows"]] == [
            (1.0, 0.5),
            (1.0, 1.0),
            (10.0, 0.5),
            (10.0, 1.0),
        ]
        assert all(r["error"] is None for r in payload["rows"])

    def test_csv_summary(self, tmp_path):
        out = tmp_path / "stats.csv"
        argv = ["ensemble", "--beta=1", "--beta=10", "--runs=50", "--format=csv"]
        assert main([*argv, f"--output={out}"]) == 0
        rows = _csv(out)
        assert [float(r["beta"]) for r in rows] == [1.0, 10.0]
        for r in rows:
            assert r["runs"] == "50"
            assert r["error"] == ""
            lo, p, hi = (float(r[k]) for k in ("wilson_lo", "pin_probability", "wilson_hi"))
            assert lo <= p <= hi

    def test_sample_paths(self, tmp_path):
        paths = tmp_path / "paths.csv"
        argv = ["ensemble", "--runs=20", "--paths=3", f"--paths-output={paths}"]
        assert main([*argv, f"--output={tmp_path / 's.json'}"]) == 0
        rows = _csv(paths)
        assert {r["run"] for r in rows} == {"0", "1", "2"}
        assert len(rows) == 3 * 358


class TestAnalytic:
    def test_pins_at_expiration(self, tmp_path):
        out = tmp_path / "curve.csv"
        assert main(["analytic", "--end-min=360", "--steps=60", f"--output={out}"]) == 0
        rows = _csv(out)
        assert len(rows) == 61
        assert float(rows[0]["price"]) == pytest.approx(OPEN_PRICE, rel=1e-12)
        assert float(rows[-1]["price"]) == STRIKE

    def test_end_beyond_horizon(self):
        assert main(["analytic", "--end-min=361"]) == 2


class TestHedgeDemand:
    def test_rise_is_opposed(self, fixtures_dir, tmp_path):
        diagnostic = tmp_path / "diag.json"
        argv = [
            "hedge-demand",
            f"--input={fixtures_dir / 'final_hour_rise.csv'}",
            f"--output={tmp_path / 'hedge.csv'}",
            f"--diagnostic={diagnostic}",
        ]
        assert main(argv) == 0
        payload = _json(diagnostic)
        assert payload["classification"] == "SELL"
        assert payload["price_direction"] == "UP"
        assert payload["opposes_move"] is True
        assert payload["points"] == 60
        assert len(_csv(tmp_path / "hedge.csv")) == 60

    def test_flat_at_strike(self, fixtures_dir, tmp_path):
        diagnostic = tmp_path / "diag.json"
        argv = [
            "hedge-demand",
            f"--input={fixtures_dir / 'flat_at_strike.csv'}",
            FLAT_MU,
            f"--diagnostic={diagnostic}",
        ]
        assert main(argv) == 0
        payload = _json(diagnostic)
        assert payload["classification"] == "FLAT"
        assert payload["opposes_move"] is False

    def test_window(self, fixtures_dir, tmp_path):
        diagnostic = tmp_path / "diag.json"
        argv = [
            "hedge-demand",
            f"--input={fixtures_dir / 'final_hour_fall.csv'}",
            "--window=320:350",
            f"--diagnostic={diagnostic}",
        ]
        assert main(argv) == 0
        payload = _json(diagnostic)
        assert payload["window"] == [320.0, 350.0]
        assert payload["classification"] == "BUY"

    def test_json_series(self, fixtures_dir, tmp_path):
        out = tmp_path / "hedge.json"
        argv = [
            "hedge-demand",
            f"--input={fixtures_dir / 'final_hour_rise.csv'}",
            "--format=json",
            f"--output={out}",
            f"--diagnostic={tmp_path / 'diag.json'}",
        ]
        assert main(argv) == 0
        records = _json(out)["records"]
        assert len(records) == 60
        assert records[0]["hedge_flow"] is None
        assert records[-1]["price"] == 500.0

    def test_missing_input(self, tmp_path, capsys):
        missing = tmp_path / "nope.csv"
        assert main(["hedge-demand", f"--input={missing}"]) == 3
        assert str(missing) in capsys.readouterr().err

    def test_malformed_input(self, tmp_path, capsys):
        bad = tmp_path / "bad.csv"
        bad.write_text("t_min,price\n300,500\n301,oops\n")
        assert main(["hedge-demand", f"--input={bad}"]) == 3
        assert f"{bad}:3:" in capsys.readouterr().err

    def test_bad_window(self, fixtures_dir):
        argv = ["hedge-demand", f"--input={fixtures_dir / 'flat_at_strike.csv'}", "--window=9"]
        assert main(argv) == 2


class TestSingularityScan:
    def test_default_betas_all_cancel(self, tmp_path):
        out = tmp_path / "scan.csv"
        assert main(["singularity-scan", f"--output={out}"]) == 0
        rows = _csv(out)
        assert len(rows) == 7
        s_star = [float(r["s_star"]) for r in rows]
        assert all(b < a for a, b in zip(s_star, s_star[1:]))

    def test_long_hedger_never_cancels(self, tmp_path):
        out = tmp_path / "scan.csv"
        cells = tmp_path / "cells.csv"
        argv = ["singularity-scan", "--beta=0.5", "--beta=2", f"--output={out}", f"--cells={cells}"]
        assert main(argv) == 0
        assert all(r["s_star"] == "" for r in _csv(out))
        assert all(r["sign"] == "1" for r in _csv(cells))

    def test_strike_slice(self, tmp_path):
        out = tmp_path / "scan.json"
        argv = ["singularity-scan", "--beta=-0.25", "--z=0", FLAT_MU, "--format=json"]
        assert main([*argv, f"--output={out}"]) == 0
        (row,) = _json(out)["rows"]
        assert row["s_star"] == pytest.approx(0.75, abs=1e-8)


class TestReplay:
    def _record(self, tmp_path, argv):
        manifest = tmp_path / "run.json"
        assert main([*argv, f"--manifest={manifest}"]) in (0, 4)
        return manifest

    @pytest.mark.parametrize(
        "argv",
        [
            ["simulate", "--beta=1", "--beta=-0.25", "--open-price=500", FLAT_MU],
            ["ensemble", "--runs=100", "--closing-prices=closes.csv"],
            ["ensemble", "--runs=50", "--format=csv"],
            ["analytic", "--steps=30", "--format=json"],
            ["singularity-scan", "--cells=cells.csv"],
        ],
    )
    def test_round_trip(self, tmp_path, monkeypatch, argv):
        monkeypatch.chdir(tmp_path)
        manifest = self._record(tmp_path, [*argv, "--output=out.txt"])
        recorded = _json(manifest)
        assert recorded["argv"][0] == argv[0]
        assert recorded["tool_version"] == __version__
        report = tmp_path / "report.json"
        assert main(["replay", str(manifest), f"--output={report}"]) == 0
        assert _json(report)["reproduced"] is True

    def test_hedge_demand_round_trip(self, tmp_path, fixtures_dir):
        manifest = self._record(
            tmp_path,
            [
                "hedge-demand",
                f"--input={fixtures_dir / 'final_hour_rise.csv'}",
                f"--output={tmp_path / 'hedge.csv'}",
            ],
        )
        assert set(_json(manifest)["outputs"]) == {"output", "diagnostic"}
        assert main(["replay", str(manifest), f"--output={tmp_path / 'r.json'}"]) == 0

    def test_stdout_output_is_recorded(self, tmp_path, capsys):
        manifest = self._record(tmp_path, ["analytic", "--steps=10"])
        capsys.readouterr()
        assert set(_json(manifest)["outputs"]) == {"output"}
        assert main(["replay", str(manifest), f"--output={tmp_path / 'r.json'}"]) == 0

    def test_tampered_checksum(self, tmp_path):
        manifest = self._record(
            tmp_path, ["analytic", "--steps=10", f"--output={tmp_path / 'a.csv'}"]
        )
        payload = _json(manifest)
        payload["outputs"]["output"] = "0" * 64
        manifest.write_text(json.dumps(payload))
        report = tmp_path / "report.json"
        assert main(["replay", str(manifest), f"--output={report}"]) == 5
        result = _json(report)
        assert result["reproduced"] is False
        assert result["outputs"]["output"]["match"] is False

    def test_missing_manifest(self, tmp_path):
        assert main(["replay", str(tmp_path / "none.json")]) == 3

    def test_invalid_manifest(self, tmp_path):
        manifest = tmp_path / "bad.json"
        manifest.write_text('{"command": "simulate"}')
        assert main(["replay", str(manifest)]) == 3
