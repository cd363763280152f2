"""
Shared plumbing of the pipeline commands: configuration flags, the run
manifest and translation of domain errors into ``CommandError``.
"""

import json
import logging
from argparse import ArgumentParser
from typing import Any

from django.core.management.base import BaseCommand, CommandError
from pydantic import ValidationError

from apps.advisor.domain.services import AdvisorError
from apps.baselines.domain.services import SelectionError
from apps.corpus.domain.services import CorpusError
from apps.datagen.domain.services import GenerationError
from apps.dml.domain.services import TrainingError
from apps.encoder.domain.services import EncoderError
from apps.estimators.domain.services import EstimatorError, LabelingError
from apps.featurizer.domain.services import FeaturizationError
from apps.incremental.domain.services import IncrementalError
from apps.workload.domain.services import WorkloadError

from ..domain.models import RunConfig
from ..domain.services import (
    PipelineError,
    load_run_config,
    resolve,
    write_run_manifest,
)

logger = logging.getLogger(__name__)

DOMAIN_ERRORS: tuple[type[Exception], ...] = (
    AdvisorError,
    CorpusError,
    EncoderError,
    EstimatorError,
    FeaturizationError,
    GenerationError,
    IncrementalError,
    LabelingError,
    PipelineError,
    SelectionError,
    TrainingError,
    WorkloadError,
)

DJANGO_OPTIONS = frozenset(
    {
        "verbosity",
        "settings",
        "pythonpath",
        "traceback",
        "no_color",
        "force_color",
        "skip_checks",
        "stdout",
        "stderr",
    }
)


def one_line(message: str) -> str:
    return " ".join(message.split())


def describe_validation(e: ValidationError) -> str:
    return "; ".join(
        f"{'.'.join(str(p) for p in err['loc']) or 'config'}: {err['msg']}"
        for err in e.errors()
    )


def parse_assignment(text: str) -> tuple[str, Any]:
    """``KEY=VALUE`` with VALUE read as JSON, or as a plain string if it is not."""
    key, sep, raw = text.partition("=")
    if not sep or not key:
        raise PipelineError(f"Expected KEY=VALUE, got '{text}'")
    try:
        return key, json.loads(raw)
    except json.JSONDecodeError:
        return key, raw


class PipelineCommand(BaseCommand):
    """
    Base of every pipeline command.

    Subclasses set ``command_name``, add their flags in ``add_step_arguments``
    and do their work in ``run`` with the resolved RunConfig.
    """

    command_name = ""
    requires_system_checks: list[str] = []

    def add_arguments(self, parser: ArgumentParser) -> None:
        parser.add_argument("--config", help="RunConfig JSON file")
        parser.add_argument("--run-dir", dest="run_dir", help="Run directory")
        parser.add_argument("--seed", type=int, help="Base seed of the run")
        parser.add_argument("--jobs", type=int, help="Dataset-level workers")
        parser.add_argument(
            "--set",
            dest="assignments",
            action="append",
            default=[],
            metavar="KEY=VALUE",
            help="Override one config field by dotted path, value as JSON",
        )
        self.add_step_arguments(parser)

    def add_step_arguments(self, parser: ArgumentParser) -> None:
        pass

    def config_overrides(self, options: dict[str, Any]) -> dict[str, Any]:
        """Dotted config keys the command's own flags set."""
        return {}

    def run(self, cfg: RunConfig, options: dict[str, Any]) -> None:
        raise NotImplementedError

    def load_config(self, options: dict[str, Any]) -> RunConfig:
        overrides = dict(
            parse_assignment(text) for text in options.get("assignments") or []
        )
        overrides.update(
            {
                "run_dir": options.get("run_dir"),
                "seed": options.get("seed"),
                "jobs": options.get("jobs"),
            }
        )
        overrides.update(self.config_overrides(options))
        return resolve(load_run_config(options.get("config"), overrides))

    def handle(self, *args: Any, **options: Any) -> None:
        try:
            cfg = self.load_config(options)
            arguments = {
                k: v for k, v in sorted(options.items()) if k not in DJANGO_OPTIONS
            }
            write_run_manifest(cfg, self.command_name, arguments)
            self.run(cfg, options)
        except ValidationError as e:
            raise CommandError(
                f"ValidationError: {describe_validation(e)}", returncode=1
            ) from e
        except DOMAIN_ERRORS as e:
            logger.debug("%s failed", self.command_name, exc_info=True)
            raise CommandError(
                f"{type(e).__name__}: {one_line(str(e))}", returncode=1
            ) from e
