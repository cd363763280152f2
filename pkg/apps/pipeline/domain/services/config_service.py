"""
Loading the run configuration and resolving environment defaults.
"""

import json
import logging
from collections.abc import Mapping
from pathlib import Path
from typing import Any

from django.conf import settings

from ..models import RunConfig

logger = logging.getLogger(__name__)


class PipelineError(Exception):
    """Raised when a pipeline step cannot find or write what it needs."""

    pass


def _set_dotted(target: dict[str, Any], key: str, value: Any) -> None:
    parts = key.split(".")
    node = target
    for part in parts[:-1]:
        child = node.setdefault(part, {})
        if not isinstance(child, dict):
            raise PipelineError(f"Cannot set '{key}': '{part}' is not a section")
        node = child
    node[parts[-1]] = value


def load_run_config(
    path: Path | str | None = None, overrides: Mapping[str, Any] | None = None
) -> RunConfig:
    """
    Read a RunConfig JSON file and apply ``overrides`` on top.

    Override keys are dotted paths into the document (``"dml.epochs"``); a
    ``None`` value leaves the file value in place.

    Raises:
        PipelineError: If the file is missing or not a JSON object
        pydantic.ValidationError: If the merged document is invalid
    """
    document: dict[str, Any] = {}
    if path is not None:
        source = Path(path)
        try:
            loaded = json.loads(source.read_text(encoding="utf-8"))
        except OSError as e:
            raise PipelineError(f"Cannot read config {source}: {e}") from e
        except json.JSONDecodeError as e:
            raise PipelineError(f"Config {source} is not valid JSON: {e}") from e
        if not isinstance(loaded, dict):
            raise PipelineError(f"Config {source} must hold a JSON object")
        document = loaded
    for key, value in (overrides or {}).items():
        if value is not None:
            _set_dotted(document, key, value)
    return RunConfig.model_validate(document)


def resolve(cfg: RunConfig) -> RunConfig:
    """Fill the environment-level fields left unset from ``settings.ADVISOR``."""
    defaults = settings.ADVISOR
    return RunConfig.model_validate(
        {
            **cfg.model_dump(),
            "run_dir": Path(cfg.run_dir or defaults["RUN_DIR"]),
            "seed": cfg.seed if cfg.seed is not None else int(defaults["SEED"]),
            "jobs": cfg.jobs or int(defaults["JOBS"]),
            "latency_unit": cfg.latency_unit or defaults["LATENCY_UNIT"],
        }
    )
