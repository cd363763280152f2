"""Domain services for the advisor bounded context."""

from .drift_service import (
    DRIFT_PERCENTILE,
    AdaptResult,
    DriftError,
    check_drift,
    detect_drift,
    drift_distance,
    drift_threshold,
    nearest_rank_percentile,
    online_adapt,
)
from .knn_service import AdvisorError, KnnResult, knn_select
from .rcs_service import (
    DEFAULT_K,
    build_rcs,
    flattened_graphs,
    rcs_labels,
    recommend,
    recommend_embedding,
)

__all__ = [
    "AdaptResult",
    "AdvisorError",
    "DEFAULT_K",
    "DRIFT_PERCENTILE",
    "DriftError",
    "KnnResult",
    "build_rcs",
    "check_drift",
    "detect_drift",
    "drift_distance",
    "drift_threshold",
    "flattened_graphs",
    "knn_select",
    "nearest_rank_percentile",
    "online_adapt",
    "rcs_labels",
    "recommend",
    "recommend_embedding",
]
