from typing import Any

from pydantic import BaseModel, Field


class RunManifest(BaseModel):
    """Everything needed to re-run a subcommand and check its outputs."""

    schema_version: int = 1
    command: str
    argv: list[str] = Field(description="Fully resolved command line, output paths included")
    parameters: dict[str, Any] = {}
    seed: int | None = None
    tool_version: str
    outputs: dict[str, str] = Field(default={}, description="Output role -> sha256 hex digest")
    notes: dict[str, Any] = {}
