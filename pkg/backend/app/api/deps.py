"""
Flag plumbing shared by the subcommand routers.
"""

import argparse
import json
import sys
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass
from pathlib import Path
from typing import Any

import pandas as pd
from loguru import logger

from app.core.config import settings
from app.core.exceptions import UsageError
from app.core.manifest import build_manifest, sha256_text, write_manifest
from app.core.services.model_core import dimensionless_for_beta, map_state, to_dimensionless
from app.models.params import DimensionlessParams, ModelParams


@dataclass(frozen=True)
class CommandRouter:
    """One subcommand: its flags and the handler returning an exit code."""

    name: str
    help: str
    configure: Callable[[argparse.ArgumentParser], None]
    handler: Callable[[argparse.Namespace], int]


def add_market_flags(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("market")
    group.add_argument("--strike", type=float, default=settings.strike)
    group.add_argument("--open-price", type=float, default=settings.open_price)
    group.add_argument(
        "--sigma", type=float, default=settings.sigma, help="implied volatility per sqrt-minute"
    )
    group.add_argument("--mu", type=float, default=settings.mu, help="drift per minute")
    group.add_argument(
        "--t0-min", type=float, default=settings.horizon_min, help="minutes to expiration"
    )
    group.add_argument(
        "--end-min", type=float, default=settings.end_min, help="minutes simulated"
    )
    group.add_argument("--steps", type=int, default=settings.steps)


def add_impact_flags(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("hedging impact")
    group.add_argument(
        "--beta",
        dest="betas",
        type=float,
        action="append",
        help="dimensionless hedging impact (repeatable)",
    )
    group.add_argument("--position", type=float, help="straddles held by the hedger (n)")
    group.add_argument("--elasticity", type=float, help="price elasticity (E)")


def add_output_flags(parser: argparse.ArgumentParser, formats: bool = True) -> None:
    parser.add_argument("--output", help="output path (default: stdout)")
    if formats:
        parser.add_argument("--format", choices=["csv", "json"], default="csv")
    parser.add_argument("--manifest", help="write a run manifest to this path")


def base_params(args: argparse.Namespace, position: float = 0.0, elasticity: float = 0.0):
    """Physical parameters from the market flags."""
    return ModelParams(
        strike=args.strike,
        sigma=args.sigma,
        mu=args.mu,
        horizon=args.t0_min,
        position=position,
        elasticity=elasticity,
    )


def resolve_impacts(
    args: argparse.Namespace, default_betas: Sequence[float]
) -> list[tuple[ModelParams, DimensionlessParams]]:
    """
    Parameter pairs for every requested hedging impact.

    Either --position with --elasticity (one physical impact) or any number of --beta.

    Args:
        args: Parsed flags
        default_betas: Used when neither form is given

    Returns:
        (physical, scaled) pairs in flag order
    """
    physical = args.position is not None or args.elasticity is not None
    if physical:
        if args.betas:
            raise UsageError("--beta cannot be combined with --position/--elasticity")
        if args.position is None or args.elasticity is None:
            raise UsageError("--position and --elasticity must be given together")
        params = base_params(args, args.position, args.elasticity)
        return [(params, to_dimensionless(params))]

    params = base_params(args)
    betas = args.betas or list(default_betas)
    return [(params.with_beta(b), dimensionless_for_beta(params, b)) for b in betas]


def flag(name: str, value: Any) -> str:
    """One resolved flag; the = form keeps negative numbers from reading as options."""
    return f"--{name}={value!r}" if isinstance(value, float) else f"--{name}={value}"


def impact_argv(args: argparse.Namespace, pairs) -> list[str]:
    if args.position is not None:
        return [flag("position", args.position), flag("elasticity", args.elasticity)]
    return [flag("beta", dp.beta) for _, dp in pairs]


def market_argv(args: argparse.Namespace) -> list[str]:
    return [
        flag("strike", args.strike),
        flag("open-price", args.open_price),
        flag("sigma", args.sigma),
        flag("mu", args.mu),
        flag("t0-min", args.t0_min),
        flag("end-min", args.end_min),
        flag("steps", args.steps),
    ]


def market_parameters(args: argparse.Namespace) -> dict[str, Any]:
    return {
        "strike": args.strike,
        "open_price": args.open_price,
        "sigma": args.sigma,
        "mu": args.mu,
        "t0_min": args.t0_min,
        "end_min": args.end_min,
        "steps": args.steps,
    }


def impact_parameters(pairs) -> list[dict[str, float]]:
    """Physical and scaled form of each impact, recorded for the manifest."""
    return [
        {
            "beta": dp.beta,
            "alpha": dp.alpha,
            "caption_impact": dp.caption_impact,
            "position": params.position,
            "elasticity": params.elasticity,
        }
        for params, dp in pairs
    ]


def opening_z(args: argparse.Namespace, params: ModelParams) -> float:
    try:
        return map_state(args.open_price, 0.0, params).z
    except ValueError as e:
        raise UsageError(f"invalid opening state: {e}") from e


def end_fraction(args: argparse.Namespace) -> float:
    if not 0 < args.end_min < args.t0_min:
        raise UsageError(f"--end-min must lie in (0, {args.t0_min!r}), got {args.end_min!r}")
    return args.end_min / args.t0_min


def parse_window(text: str) -> tuple[float, float]:
    """Parse 'lo:hi' minutes."""
    try:
        lo, hi = (float(part) for part in text.split(":"))
    except ValueError as e:
        raise UsageError(f"--window must look like lo:hi, got {text!r}") from e
    if not lo < hi:
        raise UsageError(f"--window needs lo < hi, got {text!r}")
    return lo, hi


def render_csv(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    """CSV with round-trip floats, '\\n' line endings and empty fields for None."""
    frame = pd.DataFrame(list(rows), columns=list(header))
    return frame.to_csv(index=False, lineterminator="\n")


def render_json(payload: Any) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def write_text(text: str, path: str | None) -> str:
    """
    Write an output document to a file, or stdout when path is None.

    Returns:
        sha256 of the written text
    """
    if path is None:
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        p = Path(path)
        p.parent.mkdir(parents=True, exist_ok=True)
        with p.open("w", encoding="utf-8", newline="") as handle:
            handle.write(text)
        logger.debug(f"Wrote {len(text)} characters to {p}")
    return sha256_text(text)


def output_argv(args: argparse.Namespace, roles: Sequence[str]) -> list[str]:
    argv: list[str] = []
    for role in roles:
        value = getattr(args, role.replace("-", "_"), None)
        if value is not None:
            argv.append(flag(role, str(value)))
    return argv


def finish(
    args: argparse.Namespace,
    command: str,
    argv: list[str],
    parameters: dict[str, Any],
    outputs: dict[str, str],
    exit_code: int,
    seed: int | None = None,
    notes: dict[str, Any] | None = None,
) -> int:
    """Write the manifest if one was requested and pass the exit code through."""
    if args.manifest:
        manifest = build_manifest(
            command,
            [command, *argv],
            parameters,
            outputs,
            seed=seed,
            notes={**(notes or {}), "exit_code": exit_code},
        )
        write_manifest(manifest, args.manifest)
    return exit_code
