"""
Run manifests: resolved command line, parameters and output checksums.
"""

import hashlib
import json
from pathlib import Path
from typing import Any

from loguru import logger
from pydantic import ValidationError

from app import __version__
from app.core.exceptions import InputDataError
from app.models.manifest import RunManifest


def sha256_text(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def sha256_file(path: str | Path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def build_manifest(
    command: str,
    argv: list[str],
    parameters: dict[str, Any],
    outputs: dict[str, str],
    seed: int | None = None,
    notes: dict[str, Any] | None = None,
) -> RunManifest:
    """
    Assemble the manifest of one subcommand run.

    Args:
        command: Subcommand name
        argv: Fully resolved command line (subcommand first)
        parameters: Resolved parameter values
        outputs: Output role -> sha256 of the bytes written
        seed: Random seed, if the command is stochastic
        notes: Free-form run facts (termination, exit code, conversions)

    Returns:
        RunManifest stamped with the tool version
    """
    return RunManifest(
        command=command,
        argv=argv,
        parameters=parameters,
        seed=seed,
        tool_version=__version__,
        outputs=outputs,
        notes=notes or {},
    )


def write_manifest(manifest: RunManifest, path: str | Path) -> None:
    p = Path(path)
    p.parent.mkdir(parents=True, exist_ok=True)
    with p.open("w", encoding="utf-8", newline="\n") as handle:
        json.dump(manifest.model_dump(mode="json"), handle, indent=2, sort_keys=True)
        handle.write("\n")
    logger.info(f"Manifest written to {p}")


def load_manifest(path: str | Path) -> RunManifest:
    p = Path(path)
    try:
        return RunManifest.model_validate_json(p.read_text(encoding="utf-8"))
    except FileNotFoundError as e:
        raise InputDataError("manifest not found", path=str(p)) from e
    except ValidationError as e:
        raise InputDataError(f"invalid manifest: {e.error_count()} error(s)", path=str(p)) from e
