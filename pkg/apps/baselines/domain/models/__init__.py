"""Domain models for the baselines bounded context."""

from .evaluation import (
    EPSILONS,
    EvalReport,
    EvalRow,
    SelectionTiming,
    StrategySummary,
)

__all__ = [
    "EPSILONS",
    "EvalReport",
    "EvalRow",
    "SelectionTiming",
    "StrategySummary",
]
