import argparse

from app.core.exceptions import EXIT_OK, UsageError
from app.core.services.dynamics import analytic_curve
from app.core.services.model_core import inverse_map, to_dimensionless

from .deps import (
    CommandRouter,
    add_market_flags,
    add_output_flags,
    base_params,
    finish,
    flag,
    market_argv,
    market_parameters,
    opening_z,
    output_argv,
    render_csv,
    render_json,
    write_text,
)

COLUMNS = ["s", "t_min", "z", "price"]


def configure(parser: argparse.ArgumentParser) -> None:
    add_market_flags(parser)
    add_output_flags(parser)


def run(args: argparse.Namespace) -> int:
    """Closed-form infinite-elasticity curve through the opening price."""
    if not 0 < args.end_min <= args.t0_min:
        raise UsageError(f"--end-min must lie in (0, {args.t0_min!r}], got {args.end_min!r}")
    if args.steps < 1:
        raise UsageError("--steps must be at least 1")

    params = base_params(args)
    dp = to_dimensionless(params)
    z0 = opening_z(args, params)
    s_end = args.end_min / args.t0_min
    s_grid = [k * s_end / args.steps for k in range(args.steps + 1)]
    zs = analytic_curve(z0, 0.0, s_grid, dp.alpha)

    rows = []
    for s, z in zip(s_grid, zs):
        price, t_min = inverse_map(float(z), s, dp)
        rows.append([s, t_min, float(z), price])

    if args.format == "json":
        samples = [dict(zip(COLUMNS, row)) for row in rows]
        text = render_json({"alpha": dp.alpha, "z0": z0, "samples": samples})
    else:
        text = render_csv(COLUMNS, rows)
    digest = write_text(text, args.output)

    argv = [*market_argv(args), flag("format", args.format), *output_argv(args, ["output"])]
    parameters = {**market_parameters(args), "alpha": dp.alpha, "z0": z0}
    return finish(args, "analytic", argv, parameters, {"output": digest}, EXIT_OK)


router = CommandRouter(
    name="analytic",
    help="closed-form price curve in the infinite-elasticity limit",
    configure=configure,
    handler=run,
)
