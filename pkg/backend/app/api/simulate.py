import argparse

from loguru import logger

from app.core.config import settings
from app.core.exceptions import EXIT_FAILURE, EXIT_OK, EXIT_SINGULAR
from app.core.services.dynamics import integrate
from app.core.services.model_core import d1_dimensionless, normal_cdf
from app.models.trajectory import IntegrationMode, OdeConfig, Termination, Trajectory

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

MODES = {
    "corrected": IntegrationMode.CORRECTED,
    "original": IntegrationMode.ORIGINAL,
    "infinite-elasticity": IntegrationMode.INFINITE_ELASTICITY,
}

COLUMNS = ["beta", "s", "t_min", "z", "price", "N_d1"]


def configure(parser: argparse.ArgumentParser) -> None:
    add_market_flags(parser)
    add_impact_flags(parser)
    parser.add_argument("--mode", choices=list(MODES), default="corrected")
    parser.add_argument("--scheme", choices=["rk4", "euler"], default="rk4")
    add_output_flags(parser)


def _rows(traj: Trajectory, alpha: float):
    for sample in traj.samples:
        yield {
            "s": sample.s,
            "t_min": sample.t_min,
            "z": sample.z,
            "price": sample.price,
            "N_d1": normal_cdf(d1_dimensionless(sample.z, sample.s, alpha)),
        }


def render(trajectories: list[Trajectory], alpha: float, fmt: str) -> str:
    if fmt == "json":
        return render_json(
            {
                "trajectories": [
                    {
                        "beta": traj.beta,
                        "mode": traj.mode.value,
                        "termination": traj.termination.value,
                        "singular_s": traj.singular_s,
                        "samples": list(_rows(traj, alpha)),
                    }
                    for traj in trajectories
                ]
            }
        )
    return render_csv(
        COLUMNS,
        (
            [traj.beta, *row.values()]
            for traj in trajectories
            for row in _rows(traj, alpha)
        ),
    )


def run(args: argparse.Namespace) -> int:
    """Integrate one deterministic trajectory per hedging impact."""
    pairs = resolve_impacts(args, settings.simulate_betas)
    config = OdeConfig(
        s_end=end_fraction(args),
        z_start=opening_z(args, pairs[0][0]),
        steps=args.steps,
        mode=MODES[args.mode],
        scheme=args.scheme,
    )
    trajectories = [integrate(config, dp) for _, dp in pairs]
    digest = write_text(render(trajectories, pairs[0][1].alpha, args.format), args.output)

    terminations = [t.termination for t in trajectories]
    if Termination.SINGULARITY_DETECTED in terminations:
        exit_code = EXIT_SINGULAR
    elif Termination.STEP_REJECTED in terminations:
        exit_code = EXIT_FAILURE
    else:
        exit_code = EXIT_OK
    for traj in trajectories:
        logger.info(
            f"beta={traj.beta}: {traj.termination.value}, close {traj.final.price:.6f} "
            f"at t={traj.final.t_min:.3f} min"
        )

    argv = [
        *market_argv(args),
        *impact_argv(args, pairs),
        flag("mode", args.mode),
        flag("scheme", args.scheme),
        flag("format", args.format),
        *output_argv(args, ["output"]),
    ]
    parameters = {
        **market_parameters(args),
        "mode": args.mode,
        "scheme": args.scheme,
        "impacts": impact_parameters(pairs),
    }
    notes = {
        "terminations": [
            {"beta": t.beta, "termination": t.termination.value, "singular_s": t.singular_s}
            for t in trajectories
        ]
    }
    return finish(args, "simulate", argv, parameters, {"output": digest}, exit_code, notes=notes)


router = CommandRouter(
    name="simulate",
    help="deterministic price trajectories for one or more hedging impacts",
    configure=configure,
    handler=run,
)
