"""Train one encoder per accuracy weight."""

from argparse import ArgumentParser
from typing import Any

from apps.dml.domain.services import LOSSES, WA_GRID

from ...domain.models import RunConfig
from ...domain.services import train
from ..base import PipelineCommand


class Command(PipelineCommand):
    help = "Train the graph encoder for each requested w_a and store it"
    command_name = "train"

    def add_step_arguments(self, parser: ArgumentParser) -> None:
        weights = parser.add_mutually_exclusive_group()
        weights.add_argument(
            "--wa", dest="weights", type=float, action="append", help="w_a to train"
        )
        weights.add_argument(
            "--grid", action="store_true", help="Train every w_a of 0.0, 0.1, .., 1.0"
        )
        parser.add_argument("--loss", choices=sorted(LOSSES), default="weighted")

    def run(self, cfg: RunConfig, options: dict[str, Any]) -> None:
        if options["grid"]:
            weights = list(WA_GRID)
        else:
            weights = options["weights"] or cfg.advisor.w_grid
        for t in train(cfg, weights, options["loss"]):
            self.stdout.write(
                f"w_a={t.w_a:.2f} loss={t.final_loss:.6f} model={t.model_path}"
            )
