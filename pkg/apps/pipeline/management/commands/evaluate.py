"""Compare selection strategies on the test split."""

from argparse import ArgumentParser, ArgumentTypeError
from typing import Any

from apps.baselines.domain.services import format_summary

from ...domain.models import RunConfig, check_strategy_name
from ...domain.services import evaluate_run
from ..base import PipelineCommand


def strategy_name(value: str) -> str:
    try:
        return check_strategy_name(value)
    except ValueError as e:
        raise ArgumentTypeError(str(e)) from e


class Command(PipelineCommand):
    help = "Evaluate strategies on the labeled test datasets and write the report"
    command_name = "evaluate"

    def add_step_arguments(self, parser: ArgumentParser) -> None:
        parser.add_argument("--wa", dest="weights", type=float, action="append")
        parser.add_argument(
            "--strategies",
            nargs="+",
            type=strategy_name,
            help="Base names, fixed:<estimator id> or advisor@<k>",
        )
        parser.add_argument(
            "--k-sweep",
            dest="k_sweep",
            action="store_true",
            help="Also run the advisor at every k of evaluation.k_sweep",
        )

    def run(self, cfg: RunConfig, options: dict[str, Any]) -> None:
        outcome = evaluate_run(
            cfg, options["weights"], options["strategies"], options["k_sweep"]
        )
        self.stdout.write(format_summary(outcome.report))
        for path in outcome.paths:
            self.stdout.write(f"wrote {path}")
