"""Generate train/test workloads with exact cardinalities."""

from typing import Any

from ...domain.models import RunConfig
from ...domain.services import gen_workloads
from ..base import PipelineCommand


class Command(PipelineCommand):
    help = "Generate a workload with true cardinalities for every dataset of the run"
    command_name = "gen-workload"

    def run(self, cfg: RunConfig, options: dict[str, Any]) -> None:
        total = gen_workloads(cfg)
        self.stdout.write(f"queries: {total}")
