"""Check whether a dataset lies outside the RCS and optionally adapt to it."""

from argparse import ArgumentParser
from typing import Any

from ...domain.models import RunConfig
from ...domain.services import drift_check
from ..base import PipelineCommand


class Command(PipelineCommand):
    help = "Measure a dataset's distance to the RCS against the drift threshold"
    command_name = "drift-check"

    def add_step_arguments(self, parser: ArgumentParser) -> None:
        parser.add_argument("--dataset", required=True, help="Dataset directory")
        parser.add_argument("--wa", type=float, default=1.0)
        parser.add_argument(
            "--threshold", type=float, help="Fixed threshold instead of the derived one"
        )
        parser.add_argument(
            "--adapt",
            action="store_true",
            help="Label a drifted dataset, add it and fine-tune the encoder",
        )

    def run(self, cfg: RunConfig, options: dict[str, Any]) -> None:
        outcome = drift_check(
            cfg,
            options["dataset"],
            options["wa"],
            threshold=options["threshold"],
            adapt=options["adapt"],
        )
        r = outcome.report
        self.stdout.write(
            f"{r.dataset_id} drift={str(r.drift).lower()} distance={r.distance:.6g} "
            f"threshold={r.threshold:.6g} nearest={r.nearest_id}"
        )
        if outcome.adapted_model is not None:
            self.stdout.write(f"adapted model={outcome.adapted_model}")
