"""Generate the train and test corpora of a run."""

from argparse import ArgumentParser
from typing import Any

from ...domain.models import RunConfig
from ...domain.services import gen_data
from ..base import PipelineCommand


class Command(PipelineCommand):
    help = "Generate synthetic train and test datasets into the run directory"
    command_name = "gen-data"

    def add_step_arguments(self, parser: ArgumentParser) -> None:
        parser.add_argument("--n-train", dest="n_train", type=int)
        parser.add_argument("--n-test", dest="n_test", type=int)

    def config_overrides(self, options: dict[str, Any]) -> dict[str, Any]:
        return {
            "corpus.n_train": options.get("n_train"),
            "corpus.n_test": options.get("n_test"),
        }

    def run(self, cfg: RunConfig, options: dict[str, Any]) -> None:
        written = gen_data(cfg)
        for split, paths in written.items():
            self.stdout.write(f"{split}: {len(paths)} datasets")
