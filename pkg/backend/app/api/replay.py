import argparse
import tempfile
from pathlib import Path

from loguru import logger

from app import __version__
from app.core.exceptions import EXIT_OK, EXIT_REPLAY_MISMATCH
from app.core.manifest import load_manifest, sha256_file

from .deps import CommandRouter, render_json, write_text


def configure(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("manifest_path", metavar="MANIFEST", help="manifest written by --manifest")
    parser.add_argument("--output", help="comparison report JSON path (default: stdout)")


def redirect_outputs(argv: list[str], roles: list[str], directory: Path) -> list[str]:
    """
    Point every recorded output at a scratch directory and drop the manifest flag.

    Roles missing from argv went to stdout in the original run and are added as
    explicit file outputs.
    """
    redirected: list[str] = []
    skip_next = False
    for item in argv:
        if skip_next:
            skip_next = False
            continue
        name = item.split("=", 1)[0]
        if name == "--manifest" or name.removeprefix("--") in roles:
            skip_next = "=" not in item
            continue
        redirected.append(item)
    return redirected + [f"--{role}={directory / role}" for role in roles]


def run(args: argparse.Namespace) -> int:
    """Re-run a recorded invocation and compare output checksums."""
    # Deferred: the application imports this router
    from app.main import main

    manifest = load_manifest(args.manifest_path)
    if manifest.tool_version != __version__:
        logger.warning(
            f"Manifest written by version {manifest.tool_version}, replaying with {__version__}"
        )

    roles = sorted(manifest.outputs)
    with tempfile.TemporaryDirectory(prefix="pinsim-replay-") as tmp:
        argv = redirect_outputs(manifest.argv, roles, Path(tmp))
        logger.info(f"Replaying: {' '.join(argv)}")
        exit_code = main(["--log-level", args.log_level, *argv])
        outputs = {}
        for role in roles:
            produced = Path(tmp) / role
            actual = sha256_file(produced) if produced.exists() else None
            expected = manifest.outputs[role]
            outputs[role] = {"expected": expected, "actual": actual, "match": actual == expected}

    expected_code = manifest.notes.get("exit_code", EXIT_OK)
    matched = exit_code == expected_code and all(o["match"] for o in outputs.values())
    for role, result in outputs.items():
        if not result["match"]:
            logger.warning(
                f"Replay mismatch for {role}: {result['actual']} != {result['expected']}"
            )
    report = {
        "manifest": args.manifest_path,
        "command": manifest.command,
        "exit_code": exit_code,
        "expected_exit_code": expected_code,
        "outputs": outputs,
        "reproduced": matched,
    }
    write_text(render_json(report), args.output)
    return EXIT_OK if matched else EXIT_REPLAY_MISMATCH


router = CommandRouter(
    name="replay",
    help="re-run a manifest and verify byte-identical outputs",
    configure=configure,
    handler=run,
)
