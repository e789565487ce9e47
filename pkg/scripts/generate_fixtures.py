"""
Regenerate the synthetic price fixtures under backend/tests/fixtures.

    python scripts/generate_fixtures.py [--out DIR]

Each fixture covers the final hour before the 360 minute horizon (t = 300..359) and
is written with emit_csv after rounding prices to 4 decimals.
"""

import argparse
import sys
from pathlib import Path

sys.path.append(str(Path(__file__).resolve().parents[1] / "backend"))

from app.core.logging_config import setup_logging  # noqa: E402
from app.core.services.empirical import emit_csv, synthetic_ramp  # noqa: E402

FIXTURES = {
    "final_hour_rise.csv": (498.30, 500.00),
    "final_hour_fall.csv": (501.70, 500.00),
    "flat_at_strike.csv": (500.00, 500.00),
}


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[1])
    parser.add_argument(
        "--out", default=str(Path(__file__).resolve().parents[1] / "backend/tests/fixtures")
    )
    args = parser.parse_args()
    logger = setup_logging("INFO")

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for name, (start, end) in FIXTURES.items():
        path = synthetic_ramp(start, end, 300.0, 359.0, 60, decimals=4)
        (out / name).write_text(emit_csv(path), encoding="utf-8", newline="\n")
        logger.info(f"Wrote {out / name}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
