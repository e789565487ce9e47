import argparse
from pathlib import Path

from app.core.config import settings
from app.core.exceptions import EXIT_OK, InputDataError
from app.core.services.empirical import (
    classify_flow,
    compute_hedge_series,
    emit_hedge_series_csv,
    ingest_csv,
    realized_volatility,
)
from app.models.empirical import PricePath

from .deps import (
    CommandRouter,
    add_market_flags,
    base_params,
    finish,
    flag,
    market_argv,
    market_parameters,
    output_argv,
    parse_window,
    render_json,
    write_text,
)


def configure(parser: argparse.ArgumentParser) -> None:
    add_market_flags(parser)
    parser.add_argument("--input", required=True, help="price CSV with header t_min,price")
    parser.add_argument(
        "--position", type=float, default=settings.hedge_position, help="straddles held (n)"
    )
    parser.add_argument("--window", help="diagnostic window lo:hi in minutes (default: all)")
    parser.add_argument("--deadband", type=float, help="net flow treated as flat, in shares")
    parser.add_argument("--output", help="hedge-series path (default: stdout)")
    parser.add_argument(
        "--format", choices=["csv", "json"], default="csv", help="hedge-series format"
    )
    parser.add_argument("--diagnostic", help="diagnostic JSON path")
    parser.add_argument("--manifest", help="write a run manifest to this path")


def load_path(path: str) -> PricePath:
    try:
        with Path(path).open("rb") as handle:
            return ingest_csv(handle, name=path)
    except OSError as e:
        raise InputDataError(f"cannot read input: {e.strerror}", path=path) from e


def run(args: argparse.Namespace) -> int:
    """Hedge series of an intraday price file and the buy/sell diagnostic over a window."""
    path = load_path(args.input)
    params = base_params(args, position=args.position)
    series = compute_hedge_series(path, params)

    window = parse_window(args.window) if args.window else (path.times[0], path.times[-1])
    diagnostic = classify_flow(series, window, deadband=args.deadband)
    payload = {
        **diagnostic.model_dump(mode="json"),
        "position": args.position,
        "points": len(series),
        "realized_volatility": realized_volatility(path) if len(path.points) >= 3 else None,
    }

    if args.format == "json":
        text = render_json(series.model_dump(mode="json"))
    else:
        text = emit_hedge_series_csv(series)
    outputs = {"output": write_text(text, args.output)}
    if args.diagnostic or args.output:
        outputs["diagnostic"] = write_text(render_json(payload), args.diagnostic)

    argv = [
        *market_argv(args),
        flag("input", str(Path(args.input).resolve())),
        flag("position", args.position),
        flag("window", f"{window[0]!r}:{window[1]!r}"),
        *([flag("deadband", args.deadband)] if args.deadband is not None else []),
        flag("format", args.format),
        *output_argv(args, ["output", "diagnostic"]),
    ]
    parameters = {
        **market_parameters(args),
        "input": args.input,
        "position": args.position,
        "window": list(window),
        "deadband": args.deadband,
    }
    notes = {
        "classification": diagnostic.classification.value,
        "opposes_move": diagnostic.opposes_move,
    }
    return finish(args, "hedge-demand", argv, parameters, outputs, EXIT_OK, notes=notes)


router = CommandRouter(
    name="hedge-demand",
    help="hedging demand and flow diagnostic for an intraday price file",
    configure=configure,
    handler=run,
)
