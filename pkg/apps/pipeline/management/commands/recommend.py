"""Recommend a cardinality estimator for one dataset."""

from argparse import ArgumentParser
from typing import Any

from ...domain.models import RunConfig
from ...domain.services import recommend_dataset
from ..base import PipelineCommand


class Command(PipelineCommand):
    help = "Print the recommended estimator and the averaged neighbor scores"
    command_name = "recommend"

    def add_step_arguments(self, parser: ArgumentParser) -> None:
        parser.add_argument("--dataset", required=True, help="Dataset directory")
        parser.add_argument("--wa", type=float, default=1.0)
        parser.add_argument("--k", type=int)
        parser.add_argument(
            "--json", action="store_true", help="Print the recommendation as JSON"
        )

    def run(self, cfg: RunConfig, options: dict[str, Any]) -> None:
        rec = recommend_dataset(cfg, options["dataset"], options["wa"], options["k"])
        if options["json"]:
            self.stdout.write(rec.model_dump_json())
            return
        self.stdout.write(rec.chosen)
        for estimator_id, score in zip(
            rec.estimator_ids, rec.averaged_scores, strict=True
        ):
            self.stdout.write(f"{estimator_id} {score:.6f}")
