"""Label every dataset of the run with the estimator pool."""

from argparse import ArgumentParser
from typing import Any

from ...domain.models import RunConfig
from ...domain.services import label_corpus
from ..base import PipelineCommand


class Command(PipelineCommand):
    help = "Train and test every pool estimator on every dataset; append labels"
    command_name = "label"

    def add_step_arguments(self, parser: ArgumentParser) -> None:
        parser.add_argument(
            "--force",
            action="store_true",
            help="Relabel datasets that already hold a full set of labels",
        )

    def run(self, cfg: RunConfig, options: dict[str, Any]) -> None:
        summary = label_corpus(cfg, force=options["force"])
        self.stdout.write(
            f"labeled: {len(summary.labeled)}, skipped: {len(summary.skipped)}"
        )
        for dataset_id, failures in summary.failures.items():
            for f in failures:
                self.stderr.write(
                    f"{dataset_id} {f.estimator_id} {f.kind}: {f.message}"
                )
