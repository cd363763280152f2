"""
Score normalization and the D-error metric.
"""

from collections.abc import Sequence

import numpy as np

from apps.corpus.domain.models import LabelRecord

from ..models import ScoreVector
from .registry import EstimatorError

D_ERROR_EPS = 1e-6


def _normalize_lower_better(values: np.ndarray) -> np.ndarray:
    """(max - v) / (max - min); a flat dimension scores 1.0 everywhere."""
    span = values.max() - values.min()
    if span == 0:
        return np.ones_like(values)
    return (values.max() - values) / span


def score_vector(
    records: Sequence[LabelRecord],
    w_a: float,
    estimator_ids: Sequence[str] | None = None,
) -> ScoreVector:
    """
    Combine min-max normalized accuracy and efficiency scores.

    ``S_j = w_a * S_a + (1 - w_a) * S_e`` where both dimensions map the best
    (lowest) mean to 1 and the worst to 0.

    Args:
        estimator_ids: Order of the output; every id must have a record.
            Defaults to the order of ``records``.

    Raises:
        EstimatorError: On fewer than two records, mixed datasets, a missing
            estimator or ``w_a`` outside [0, 1]
    """
    if not 0.0 <= w_a <= 1.0:
        raise EstimatorError(f"w_a must lie in [0, 1], got {w_a}")
    if len(records) < 2:
        raise EstimatorError(
            f"Score normalization needs at least 2 records, got {len(records)}"
        )
    datasets = {r.dataset_id for r in records}
    if len(datasets) > 1:
        raise EstimatorError(f"Records span several datasets: {sorted(datasets)}")

    by_id = {r.estimator_id: r for r in records}
    ids = list(estimator_ids) if estimator_ids is not None else list(by_id)
    missing = [i for i in ids if i not in by_id]
    if missing:
        raise EstimatorError(
            f"Dataset {datasets.pop()} has no label for estimators {missing}"
        )
    if len(ids) < 2:
        raise EstimatorError("Score normalization needs at least 2 estimators")

    qerr = np.array([by_id[i].qerr_mean for i in ids])
    latency = np.array([by_id[i].latency_mean for i in ids])
    s_a = _normalize_lower_better(qerr)
    s_e = _normalize_lower_better(latency)
    scores = w_a * s_a + (1.0 - w_a) * s_e
    return ScoreVector(estimator_ids=tuple(ids), scores=scores, w_a=w_a)


def d_error(scores: ScoreVector, chosen: int | str) -> float:
    """
    Relative gap between the optimum and the chosen estimator's score,
    ``(S_opt - S_chosen) / max(S_chosen, 1e-6)``.
    """
    index = scores.index(chosen) if isinstance(chosen, str) else chosen
    if not 0 <= index < len(scores):
        raise EstimatorError(f"Chosen index {index} outside a pool of {len(scores)}")
    s_chosen = float(scores.scores[index])
    return (float(scores.scores.max()) - s_chosen) / max(s_chosen, D_ERROR_EPS)
