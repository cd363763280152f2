"""Incremental training of stored encoders."""

from argparse import ArgumentParser
from typing import Any

from ...domain.models import RunConfig
from ...domain.services import cross_train, il_ablation
from ..base import PipelineCommand


class Command(PipelineCommand):
    help = (
        "Cross-validate a stored encoder, fine-tune it on Mixup samples of the "
        "poorly served datasets and keep it if the D-error did not regress"
    )
    command_name = "cross-train"

    def add_step_arguments(self, parser: ArgumentParser) -> None:
        parser.add_argument("--wa", dest="weights", type=float, action="append")
        parser.add_argument("--threshold", type=float, help="D-error threshold b")
        parser.add_argument(
            "--no-augmentation",
            dest="augment",
            action="store_false",
            default=None,
            help="Fine-tune on the corpus alone, without Mixup samples",
        )
        parser.add_argument(
            "--ablation",
            action="store_true",
            help="Compare the variants on shares of the training split instead",
        )
        parser.add_argument(
            "--fractions", nargs="+", type=float, help="Shares for --ablation"
        )

    def config_overrides(self, options: dict[str, Any]) -> dict[str, Any]:
        return {
            "incremental.derr_threshold": options.get("threshold"),
            "incremental.augment": options.get("augment"),
            "bench.il_fractions": options.get("fractions"),
        }

    def run(self, cfg: RunConfig, options: dict[str, Any]) -> None:
        for w_a in options["weights"] or cfg.advisor.w_grid:
            if options["ablation"]:
                ablation = il_ablation(cfg, w_a, cfg.bench.il_fractions)
                for row in ablation.rows:
                    self.stdout.write(
                        f"w_a={w_a:.2f} fraction={row['fraction']} "
                        f"datasets={row['n_datasets']} {row['variant']} "
                        f"derror={row['mean_derror']:.6f}"
                    )
                self.stdout.write(f"wrote {ablation.path}")
                continue
            outcome = cross_train(cfg, w_a)
            r = outcome.result
            self.stdout.write(
                f"w_a={w_a:.2f} feedback={len(r.before.feedback)} "
                f"synthetic={r.n_synthetic} "
                f"derror_before={r.before.mean_derror:.6f} "
                f"derror_after={r.after.mean_derror:.6f} "
                f"{'kept' if r.accepted else 'reverted'} "
                f"report={outcome.report_path}"
            )
