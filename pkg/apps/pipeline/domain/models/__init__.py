"""Domain models for the pipeline bounded context."""

from .manifest import RUN_MANIFEST_NAME, RunManifest
from .run_config import (
    ALL_STRATEGIES,
    FIXED_PREFIX,
    SWEEP_PREFIX,
    AdvisorConfig,
    BenchConfig,
    CorpusConfig,
    EvalConfig,
    RunConfig,
    check_strategy_name,
)

__all__ = [
    "ALL_STRATEGIES",
    "AdvisorConfig",
    "BenchConfig",
    "CorpusConfig",
    "EvalConfig",
    "FIXED_PREFIX",
    "RUN_MANIFEST_NAME",
    "RunConfig",
    "RunManifest",
    "SWEEP_PREFIX",
    "check_strategy_name",
]
