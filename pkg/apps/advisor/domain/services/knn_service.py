"""
Exact nearest-neighbor selection shared by every KNN-based strategy.
"""

from dataclasses import dataclass

import numpy as np


class AdvisorError(Exception):
    """Raised when a recommendation or RCS operation cannot proceed."""

    pass


@dataclass(frozen=True, eq=False)
class KnnResult:
    neighbors: np.ndarray
    distances: np.ndarray
    averaged: np.ndarray
    chosen: int


def knn_select(
    vectors: np.ndarray, labels: np.ndarray, query: np.ndarray, k: int
) -> KnnResult:
    """
    Average the label rows of the ``k`` rows of ``vectors`` nearest to
    ``query`` and pick the top entry.

    Distance ties keep the lower row first; score ties pick the lowest
    estimator index.

    Raises:
        AdvisorError: If ``k`` is outside [1, len(vectors)] or shapes disagree
    """
    n = vectors.shape[0]
    if not 1 <= k <= n:
        raise AdvisorError(f"k={k} must lie in [1, {n}]")
    if labels.shape[0] != n or vectors.shape[1:] != query.shape:
        raise AdvisorError(
            f"Shapes disagree: vectors {vectors.shape}, labels {labels.shape}, "
            f"query {query.shape}"
        )
    distances = np.linalg.norm(vectors - query, axis=1)
    neighbors = np.argsort(distances, kind="stable")[:k]
    averaged = labels[neighbors].mean(axis=0)
    return KnnResult(
        neighbors=neighbors,
        distances=distances[neighbors],
        averaged=averaged,
        chosen=int(np.argmax(averaged)),
    )
