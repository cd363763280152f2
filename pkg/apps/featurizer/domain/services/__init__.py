"""Domain services for the featurizer bounded context."""

from .featurize_service import (
    STAT_CLAMP,
    FeaturizationError,
    build_feature_graph,
    drift_layout,
    drift_vector,
    extract_column_stats,
    extract_correlation_block,
    featurize_corpus,
    fit_normalization,
    flatten_graph,
    normalize_vertices,
    raw_feature_graph,
    widen_drift_vectors,
)

__all__ = [
    "FeaturizationError",
    "STAT_CLAMP",
    "build_feature_graph",
    "drift_layout",
    "drift_vector",
    "extract_column_stats",
    "extract_correlation_block",
    "featurize_corpus",
    "fit_normalization",
    "flatten_graph",
    "normalize_vertices",
    "raw_feature_graph",
    "widen_drift_vectors",
]
