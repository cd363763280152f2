"""
Run manifest: what produced the artifacts of a run directory.
"""

from typing import Any

from pydantic import BaseModel, ConfigDict, Field

RUN_MANIFEST_NAME = "run_manifest.json"


class RunManifest(BaseModel):
    """Inputs, package versions and seeds of the last command; no timestamps."""

    model_config = ConfigDict(extra="forbid")

    command: str = Field(..., description="Last pipeline command run")
    arguments: dict[str, Any] = Field(default_factory=dict)
    config: dict[str, Any] = Field(..., description="Resolved RunConfig")
    versions: dict[str, str] = Field(..., description="Package versions")
    seed: int
