"""Domain models for the advisor bounded context."""

from .rcs import RCS, DriftReport, RcsEntry, Recommendation

__all__ = ["DriftReport", "RCS", "RcsEntry", "Recommendation"]
