"""Domain models for the workload bounded context."""

from .query import (
    JoinPredicate,
    Query,
    RangePredicate,
    Workload,
    WorkloadLine,
    WorkloadParams,
)

__all__ = [
    "JoinPredicate",
    "Query",
    "RangePredicate",
    "Workload",
    "WorkloadLine",
    "WorkloadParams",
]
