"""
Command-line application for pinsim.

Builds the argparse application and registers one router per subcommand.
"""

import argparse
import sys

from loguru import logger
from pydantic import ValidationError

from app import __version__
from app.api import analytic, ensemble, hedge_demand, replay, simulate, singularity_scan
from app.api.deps import CommandRouter
from app.core.config import settings
from app.core.exceptions import EXIT_FAILURE, EXIT_OK, EXIT_USAGE, PinsimError
from app.core.logging_config import setup_logging
from app.core.performance import performance_monitor

LOG_LEVELS = ["TRACE", "DEBUG", "INFO", "SUCCESS", "WARNING", "ERROR", "CRITICAL"]


class PinsimApp:
    """argparse parser plus the routers mounted on it."""

    def __init__(self, prog: str, description: str):
        self.parser = argparse.ArgumentParser(prog=prog, description=description)
        self.parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
        self.parser.add_argument(
            "--log-level",
            type=str.upper,
            choices=LOG_LEVELS,
            default=settings.log_level,
            help="stderr log level",
        )
        self._subparsers = self.parser.add_subparsers(dest="command", required=True)

    def include_router(self, router: CommandRouter) -> None:
        sub = self._subparsers.add_parser(router.name, help=router.help, description=router.help)
        router.configure(sub)
        sub.set_defaults(handler=router.handler)

    def run(self, argv: list[str]) -> int:
        try:
            args = self.parser.parse_args(argv)
        except SystemExit as e:
            return EXIT_OK if e.code in (0, None) else EXIT_USAGE

        setup_logging(args.log_level)
        try:
            return args.handler(args)
        except PinsimError as e:
            logger.error(f"{args.command}: {e}")
            return e.exit_code
        except ValidationError as e:
            logger.error(f"{args.command}: invalid parameters: {e}")
            return EXIT_USAGE
        except Exception:
            logger.exception(f"{args.command}: unexpected failure")
            return EXIT_FAILURE
        finally:
            for name, stats in performance_monitor.get_metrics().items():
                logger.debug(f"{name}: {stats['count']} call(s), {stats['total_time']:.4f}s")
            performance_monitor.reset_metrics()


app = PinsimApp(
    prog="pinsim",
    description="Delta-hedging feedback and stock-price pinning at option expiration",
)

# Include routers
app.include_router(simulate.router)
app.include_router(ensemble.router)
app.include_router(analytic.router)
app.include_router(hedge_demand.router)
app.include_router(singularity_scan.router)
app.include_router(replay.router)


def main(argv: list[str] | None = None) -> int:
    return app.run(sys.argv[1:] if argv is None else list(argv))
