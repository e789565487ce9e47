import argparse

from app.core.config import settings
from app.core.exceptions import EXIT_OK, UsageError
from app.core.services.dynamics import scan_denominator

from .deps import (
    CommandRouter,
    add_impact_flags,
    add_market_flags,
    add_output_flags,
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


def configure(parser: argparse.ArgumentParser) -> None:
    add_market_flags(parser)
    add_impact_flags(parser)
    parser.add_argument("--z", type=float, help="log-moneyness of the slice (default: open)")
    parser.add_argument("--cells", help="per-cell denominator CSV path")
    add_output_flags(parser)


def run(args: argparse.Namespace) -> int:
    """First cancellation of the feedback denominator for each hedging impact."""
    pairs = resolve_impacts(args, settings.scan_betas)
    if args.steps < 1:
        raise UsageError("--steps must be at least 1")
    s_end = end_fraction(args)
    s_grid = [k * s_end / args.steps for k in range(args.steps + 1)]
    z = args.z if args.z is not None else opening_z(args, pairs[0][0])

    scan = scan_denominator(pairs[0][1], [dp.beta for _, dp in pairs], s_grid, z)

    if args.format == "json":
        text = render_json(scan.model_dump(mode="json"))
    else:
        text = render_csv(
            ["beta", "s_star", "note"], ([r.beta, r.s_star, r.note] for r in scan.rows)
        )
    outputs = {"output": write_text(text, args.output)}
    if args.cells:
        cells = render_csv(
            ["beta", "s", "denominator", "sign"],
            ([c.beta, c.s, c.denominator, c.sign] for c in scan.cells),
        )
        outputs["cells"] = write_text(cells, args.cells)

    argv = [
        *market_argv(args),
        *impact_argv(args, pairs),
        flag("z", z),
        flag("format", args.format),
        *output_argv(args, ["output", "cells"]),
    ]
    parameters = {**market_parameters(args), "z": z, "impacts": impact_parameters(pairs)}
    notes = {"singular_betas": [r.beta for r in scan.rows if r.s_star is not None]}
    return finish(args, "singularity-scan", argv, parameters, outputs, EXIT_OK, notes=notes)


router = CommandRouter(
    name="singularity-scan",
    help="denominator sign table and first cancellation per hedging impact",
    configure=configure,
    handler=run,
)
