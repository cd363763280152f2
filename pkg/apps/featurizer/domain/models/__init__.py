"""Domain models for the featurizer bounded context."""

from .feature_graph import STAT_NAMES, FeatureConfig, FeatureGraph, feature_names

__all__ = ["FeatureConfig", "FeatureGraph", "STAT_NAMES", "feature_names"]
