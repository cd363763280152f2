"""
Cross-validation feedback: which corpus datasets the current encoder
recommends poorly for.
"""

import logging
from collections.abc import Sequence

import numpy as np
from joblib import Parallel, delayed

from apps.advisor.domain.services import knn_select
from apps.encoder.domain.services import GINEncoder
from apps.estimators.domain.models import ScoreVector
from apps.estimators.domain.services import d_error
from apps.featurizer.domain.models import FeatureGraph

from ..models import FeedbackSplit, IncrementalConfig

logger = logging.getLogger(__name__)


class IncrementalError(Exception):
    """Raised when incremental learning cannot run on the given corpus."""

    pass


def fold_assignment(n: int, folds: int, seed: int) -> np.ndarray:
    """Fold index per dataset from a seeded shuffle, sizes differing by at most 1."""
    if n < folds:
        raise IncrementalError(
            f"{folds}-fold validation needs {folds} datasets, got {n}"
        )
    assignment = np.empty(n, dtype=np.int64)
    assignment[np.random.default_rng(seed).permutation(n)] = np.arange(n) % folds
    return assignment


def _validate_fold(
    embeddings: np.ndarray,
    labels: np.ndarray,
    assignment: np.ndarray,
    fold: int,
    k: int,
) -> list[tuple[int, int]]:
    held_out = np.flatnonzero(assignment == fold)
    rest = np.flatnonzero(assignment != fold)
    neighbors = min(k, rest.shape[0])
    return [
        (
            int(i),
            knn_select(embeddings[rest], labels[rest], embeddings[i], neighbors).chosen,
        )
        for i in held_out
    ]


def cross_validate(
    embeddings: np.ndarray,
    labels: np.ndarray,
    estimator_ids: Sequence[str],
    cfg: IncrementalConfig,
    n_jobs: int = 1,
) -> FeedbackSplit:
    """
    Recommend for each dataset from the other folds and split the corpus at
    ``cfg.derr_threshold``.
    """
    n = embeddings.shape[0]
    assignment = fold_assignment(n, cfg.folds, cfg.seed)
    per_fold = Parallel(n_jobs=n_jobs)(
        delayed(_validate_fold)(embeddings, labels, assignment, f, cfg.k)
        for f in range(cfg.folds)
    )
    chosen = np.empty(n, dtype=np.int64)
    for i, c in (pair for fold in per_fold for pair in fold):
        chosen[i] = c

    ids = tuple(estimator_ids)
    derrors = np.array(
        [d_error(ScoreVector(ids, labels[i], 1.0), int(chosen[i])) for i in range(n)]
    )
    feedback = [int(i) for i in np.flatnonzero(derrors > cfg.derr_threshold)]
    reference = [int(i) for i in np.flatnonzero(derrors <= cfg.derr_threshold)]
    return FeedbackSplit(
        folds=assignment,
        derrors=derrors,
        chosen=chosen,
        feedback=feedback,
        reference=reference,
    )


def collect_feedback(
    graphs: Sequence[FeatureGraph],
    labels: np.ndarray,
    encoder: GINEncoder,
    estimator_ids: Sequence[str],
    cfg: IncrementalConfig,
    n_jobs: int = 1,
) -> FeedbackSplit:
    """
    Embed the corpus with ``encoder`` and cross-validate its recommendations.

    ``labels`` holds one score vector per graph at the encoder's ``w_a``.

    Raises:
        IncrementalError: If the corpus has fewer datasets than folds or the
            labels do not line up with the graphs
    """
    if labels.shape != (len(graphs), len(estimator_ids)):
        raise IncrementalError(
            f"Labels of shape {labels.shape} for {len(graphs)} graphs and "
            f"{len(estimator_ids)} estimators"
        )
    if len(graphs) < cfg.folds:
        raise IncrementalError(
            f"{cfg.folds}-fold validation needs {cfg.folds} datasets, got {len(graphs)}"
        )
    split = cross_validate(
        encoder.encode_many(graphs), labels, estimator_ids, cfg, n_jobs
    )
    logger.info(
        "Cross-validation: mean D-error %.4f, %d feedback / %d reference",
        split.mean_derror, len(split.feedback), len(split.reference),
    )
    return split
