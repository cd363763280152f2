"""Domain models for the dml bounded context."""

from .training import DmlConfig, EpochStats, LossKind, TrainingResult

__all__ = ["DmlConfig", "EpochStats", "LossKind", "TrainingResult"]
