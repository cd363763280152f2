"""End-to-end run: generate, label, train, evaluate, with timings."""

from argparse import ArgumentParser
from typing import Any

from apps.baselines.domain.services import format_summary

from ...domain.models import RunConfig
from ...domain.services import bench
from ..base import PipelineCommand


class Command(PipelineCommand):
    help = "Run the whole pipeline at a chosen scale and report D-error and timings"
    command_name = "bench"

    def add_step_arguments(self, parser: ArgumentParser) -> None:
        parser.add_argument("--n-train", dest="n_train", type=int)
        parser.add_argument("--n-test", dest="n_test", type=int)
        parser.add_argument("--wa", dest="weights", type=float, action="append")
        parser.add_argument(
            "--no-ablation",
            dest="ablation",
            action="store_false",
            default=None,
            help="Skip the basic-loss encoders",
        )
        parser.add_argument(
            "--no-k-sweep",
            dest="k_sweep",
            action="store_false",
            default=None,
            help="Skip the per-k advisor runs",
        )
        parser.add_argument(
            "--incremental-ablation",
            dest="incremental_ablation",
            action="store_true",
            default=None,
            help="Also compare the incremental learning variants",
        )

    def config_overrides(self, options: dict[str, Any]) -> dict[str, Any]:
        return {
            "corpus.n_train": options.get("n_train"),
            "corpus.n_test": options.get("n_test"),
            "advisor.w_grid": options.get("weights"),
            "bench.ablation": options.get("ablation"),
            "bench.k_sweep": options.get("k_sweep"),
            "bench.incremental_ablation": options.get("incremental_ablation"),
        }

    def run(self, cfg: RunConfig, options: dict[str, Any]) -> None:
        result = bench(cfg)
        self.stdout.write(format_summary(result.evaluation.report))
        for name, seconds in result.totals.items():
            self.stdout.write(f"{name}: {seconds:.4f}s")
        paths = [*result.evaluation.paths, result.timings_path, *result.ablation_paths]
        for path in paths:
            self.stdout.write(f"wrote {path}")
