import argparse
from itertools import product

from app.core.config import settings
from app.core.exceptions import EXIT_FAILURE, EXIT_OK, UsageError
from app.core.services.stochastic import pin_probability_sweep, run_ensemble, simulate_noisy_path
from app.models.ensemble import EnsembleStats, NoiseConfig, SweepRow
from app.models.trajectory import OdeConfig

from .deps import (
    CommandRouter,
    add_impact_flags,
    add_market_flags,
    end_fraction,
    finish,
    flag,
    impact_argv,
    impact_parameters,
    market_argv,
    market_parameters,
    opening_z,
    output_argv,
    render_csv,
    render_json,
    resolve_impacts,
    write_text,
)

OUTPUT_ROLES = ["output", "closing-prices", "paths-output"]

STATS_COLUMNS = [
    "beta",
    "noise_ratio",
    "seed",
    "runs",
    "pin_tolerance",
    "pin_count",
    "pin_probability",
    "wilson_lo",
    "wilson_hi",
    "baseline_pin_probability",
    "singular_count",
    "mean_close",
    "std_close",
    "error",
]


def configure(parser: argparse.ArgumentParser) -> None:
    add_market_flags(parser)
    add_impact_flags(parser)
    mc = parser.add_argument_group("monte carlo")
    mc.add_argument(
        "--noise-ratio",
        dest="noise_ratios",
        type=float,
        action="append",
        help="noise volatility relative to implied volatility (repeatable)",
    )
    mc.add_argument("--seed", type=int, default=settings.seed)
    mc.add_argument("--runs", type=int, default=settings.runs)
    mc.add_argument(
        "--pin-tol", type=float, default=settings.pin_tolerance, help="pin band in dollars"
    )
    mc.add_argument("--workers", type=int, default=settings.max_workers)
    parser.add_argument("--output", help="statistics path (default: stdout)")
    parser.add_argument(
        "--format",
        choices=["csv", "json"],
        default="json",
        help="statistics as a JSON document or one CSV row per cell",
    )
    parser.add_argument("--closing-prices", help="closing-price CSV path")
    parser.add_argument("--paths", type=int, default=0, help="sample paths to export")
    parser.add_argument("--paths-output", help="sample-path CSV path")
    parser.add_argument("--manifest", help="write a run manifest to this path")


def _summary(stats: EnsembleStats) -> dict:
    return stats.model_dump(mode="json", exclude={"closing_prices"})


def _stats_csv(rows: list[SweepRow], seed: int) -> str:
    table = []
    for row in rows:
        stats = row.stats
        if stats is None:
            table.append([row.beta, row.noise_ratio, seed, *[None] * 10, row.error])
            continue
        table.append(
            [
                row.beta,
                row.noise_ratio,
                seed,
                stats.runs,
                stats.pin_tolerance,
                stats.pin_count,
                stats.pin_probability,
                *stats.wilson_interval,
                stats.baseline_pin_probability,
                stats.singular_count,
                stats.mean_close,
                stats.std_close,
                row.error,
            ]
        )
    return render_csv(STATS_COLUMNS, table)


def _paths_csv(config: OdeConfig, dp, noise: NoiseConfig, count: int) -> str:
    rows = []
    for run_index in range(count):
        traj = simulate_noisy_path(config, dp, noise, run_index)
        rows.extend([run_index, p.s, p.t_min, p.z, p.price] for p in traj.samples)
    return render_csv(["run", "s", "t_min", "z", "price"], rows)


def run(args: argparse.Namespace) -> int:
    """Pin-probability ensemble, or a sweep when several impacts or noise ratios are given."""
    if args.runs < 1:
        raise UsageError("--runs must be at least 1")
    if args.pin_tol < 0:
        raise UsageError("--pin-tol must be non-negative")
    if args.workers < 1:
        raise UsageError("--workers must be at least 1")

    pairs = resolve_impacts(args, [settings.ensemble_beta])
    noise_ratios = args.noise_ratios or [settings.noise_ratio]
    noises = [NoiseConfig(noise_ratio=r, seed=args.seed, runs=args.runs) for r in noise_ratios]
    dps = [dp for _, dp in pairs]
    sweep = len(dps) * len(noises) > 1

    if args.paths < 0:
        raise UsageError("--paths must be non-negative")
    if args.paths and (sweep or args.paths_output is None):
        raise UsageError("--paths needs --paths-output and a single beta and noise ratio")

    config = OdeConfig(
        s_end=end_fraction(args),
        z_start=opening_z(args, pairs[0][0]),
        steps=args.steps,
    )

    if sweep:
        rows = pin_probability_sweep(config, dps, noises, args.pin_tol, workers=args.workers)
    else:
        stats = run_ensemble(config, dps[0], noises[0], args.pin_tol, workers=args.workers)
        rows = [SweepRow(beta=dps[0].beta, noise_ratio=noises[0].noise_ratio, stats=stats)]

    if args.format == "csv":
        text = _stats_csv(rows, args.seed)
    elif sweep:
        text = render_json(
            {
                "seed": args.seed,
                "rows": [
                    {
                        "beta": row.beta,
                        "noise_ratio": row.noise_ratio,
                        "error": row.error,
                        "stats": _summary(row.stats) if row.stats else None,
                    }
                    for row in rows
                ],
            }
        )
    else:
        text = render_json(
            {
                "beta": rows[0].beta,
                "noise_ratio": rows[0].noise_ratio,
                "seed": args.seed,
                **_summary(rows[0].stats),
            }
        )
    outputs = {"output": write_text(text, args.output)}

    if args.closing_prices:
        closes = render_csv(
            ["beta", "noise_ratio", "run", "close"],
            (
                [row.beta, row.noise_ratio, k, close]
                for row in rows
                if row.stats
                for k, close in enumerate(row.stats.closing_prices)
            ),
        )
        outputs["closing-prices"] = write_text(closes, args.closing_prices)
    if args.paths:
        text = _paths_csv(config, dps[0], noises[0], min(args.paths, args.runs))
        outputs["paths-output"] = write_text(text, args.paths_output)

    exit_code = EXIT_FAILURE if any(row.error for row in rows) else EXIT_OK
    argv = [
        *market_argv(args),
        *impact_argv(args, pairs),
        *[flag("noise-ratio", r) for r in noise_ratios],
        flag("seed", args.seed),
        flag("runs", args.runs),
        flag("pin-tol", args.pin_tol),
        flag("workers", args.workers),
        flag("paths", args.paths),
        flag("format", args.format),
        *output_argv(args, OUTPUT_ROLES),
    ]
    parameters = {
        **market_parameters(args),
        "impacts": impact_parameters(pairs),
        "noise_ratios": noise_ratios,
        "runs": args.runs,
        "pin_tolerance": args.pin_tol,
        "cells": [[dp.beta, n.noise_ratio] for dp, n in product(dps, noises)],
    }
    notes = {
        "stream_rule": "Philox(SeedSequence(seed, spawn_key=(run_index,)))",
        "singular_counts": [row.stats.singular_count if row.stats else None for row in rows],
    }
    return finish(
        args, "ensemble", argv, parameters, outputs, exit_code, seed=args.seed, notes=notes
    )


router = CommandRouter(
    name="ensemble",
    help="Monte Carlo pin probability under trading noise",
    configure=configure,
    handler=run,
)
