"""
Run directory layout and the run manifest.
"""

import json
import logging
from dataclasses import dataclass
from importlib.metadata import PackageNotFoundError, version
from pathlib import Path
from typing import Any, Literal

from apps.corpus.domain.services import list_dataset_dirs
from apps.incremental.domain.services import ablation_filename, report_filename

from ..models import RUN_MANIFEST_NAME, RunConfig, RunManifest
from .config_service import PipelineError

logger = logging.getLogger(__name__)

Split = Literal["train", "test"]

VERSIONED_PACKAGES = ("numpy", "pandas", "scipy", "django", "pydantic", "joblib")


@dataclass(frozen=True)
class RunLayout:
    """Where each artifact of a run lives."""

    root: Path

    @classmethod
    def of(cls, cfg: RunConfig) -> "RunLayout":
        if cfg.run_dir is None:
            raise PipelineError("Run directory is not resolved")
        return cls(Path(cfg.run_dir))

    def split_dir(self, split: Split) -> Path:
        return self.root / "datasets" / split

    def dataset_dirs(self, split: Split) -> list[Path]:
        directory = self.split_dir(split)
        if not directory.is_dir():
            return []
        return list_dataset_dirs(directory)

    @property
    def labels(self) -> Path:
        return self.root / "labels.jsonl"

    def models(self, loss: str = "weighted") -> Path:
        return self.root / ("models" if loss == "weighted" else f"models_{loss}")

    @property
    def eval_dir(self) -> Path:
        return self.root / "eval"

    @property
    def timings(self) -> Path:
        return self.root / "timings.csv"

    def incremental_report(self, w_a: float) -> Path:
        return self.root / "incremental" / report_filename(w_a)

    def incremental_ablation(self, w_a: float) -> Path:
        return self.root / "incremental" / ablation_filename(w_a)

    @property
    def manifest(self) -> Path:
        return self.root / RUN_MANIFEST_NAME


def package_versions() -> dict[str, str]:
    versions = {}
    for name in VERSIONED_PACKAGES:
        try:
            versions[name] = version(name)
        except PackageNotFoundError:
            versions[name] = "unknown"
    return versions


def write_run_manifest(
    cfg: RunConfig, command: str, arguments: dict[str, Any] | None = None
) -> Path:
    """Record the command, resolved config, versions and seed of the run."""
    layout = RunLayout.of(cfg)
    manifest = RunManifest(
        command=command,
        arguments=arguments or {},
        config=cfg.model_dump(mode="json"),
        versions=package_versions(),
        seed=cfg.seed or 0,
    )
    try:
        layout.root.mkdir(parents=True, exist_ok=True)
        layout.manifest.write_text(
            json.dumps(manifest.model_dump(mode="json"), indent=2, sort_keys=True)
            + "\n",
            encoding="utf-8",
        )
    except OSError as e:
        raise PipelineError(
            f"Failed to write run manifest {layout.manifest}: {e}"
        ) from e
    return layout.manifest
