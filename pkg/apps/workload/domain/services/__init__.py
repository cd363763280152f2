"""Domain services for the workload bounded context."""

from .generator_service import (
    WORKLOAD_FILE,
    gen_workload,
    load_workload,
    random_query,
    save_workload,
)
from .oracle_service import WorkloadError, exact_card, nested_loop_card, qerror

__all__ = [
    "WORKLOAD_FILE",
    "WorkloadError",
    "exact_card",
    "gen_workload",
    "load_workload",
    "nested_loop_card",
    "qerror",
    "random_query",
    "save_workload",
]
