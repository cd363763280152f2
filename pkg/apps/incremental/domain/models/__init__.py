"""Domain models for the incremental bounded context."""

from .feedback import FeedbackSplit, IncrementalConfig, IncrementalResult

__all__ = ["FeedbackSplit", "IncrementalConfig", "IncrementalResult"]
