"""
RCS construction and KNN recommendation.
"""

import logging
from collections.abc import Mapping, Sequence

import numpy as np
from joblib import Parallel, delayed

from apps.corpus.domain.models import Dataset, LabelRecord
from apps.encoder.domain.services import TrainedEncoder
from apps.estimators.domain.services import EstimatorError, score_vector
from apps.featurizer.domain.services import (
    build_feature_graph,
    drift_vector,
    flatten_graph,
)

from ..models import RCS, RcsEntry, Recommendation
from .knn_service import AdvisorError, knn_select

logger = logging.getLogger(__name__)

DEFAULT_K = 2


def embed_entry(
    d: Dataset, model: TrainedEncoder, records: list[LabelRecord]
) -> RcsEntry:
    graph = build_feature_graph(d, model.features)
    return RcsEntry(
        dataset_id=d.id,
        embedding=model.encoder.encode(graph).x,
        records=records,
        graph=graph,
        drift=drift_vector(d, model.features),
    )


def build_rcs(
    corpus: Sequence[Dataset],
    model: TrainedEncoder,
    records_by_dataset: Mapping[str, Sequence[LabelRecord]],
    estimator_ids: Sequence[str],
    n_jobs: int = 1,
) -> RCS:
    """
    Embed every corpus dataset with ``model`` and attach its raw labels.

    Raises:
        AdvisorError: If a dataset lacks a record for some estimator
    """
    wanted = set(estimator_ids)
    for d in corpus:
        have = {r.estimator_id for r in records_by_dataset.get(d.id, [])}
        if not wanted <= have:
            raise AdvisorError(
                f"Dataset {d.id} has no labels for {sorted(wanted - have)}"
            )
    entries = Parallel(n_jobs=n_jobs)(
        delayed(embed_entry)(d, model, list(records_by_dataset[d.id])) for d in corpus
    )
    logger.info("Built RCS of %d datasets for w_a=%.2f", len(corpus), model.w_a)
    return RCS(model=model, estimator_ids=tuple(estimator_ids), entries=list(entries))


def rcs_labels(rcs: RCS, w_a: float) -> np.ndarray:
    """Score vector of every RCS entry at ``w_a``, one row each."""
    try:
        rows = [
            score_vector(e.records, w_a, rcs.estimator_ids).scores for e in rcs.entries
        ]
        return np.vstack(rows)
    except EstimatorError as e:
        raise AdvisorError(str(e)) from e


def recommend_embedding(
    x: np.ndarray,
    rcs: RCS,
    k: int = DEFAULT_K,
    w_a: float | None = None,
    dataset_id: str = "",
) -> Recommendation:
    """KNN recommendation for an already embedded dataset."""
    if not rcs.entries:
        raise AdvisorError("Cannot recommend from an empty RCS")
    weight = rcs.w_a if w_a is None else w_a
    result = knn_select(rcs.embeddings(), rcs_labels(rcs, weight), x, k)
    ids = rcs.dataset_ids
    return Recommendation(
        dataset_id=dataset_id,
        chosen=rcs.estimator_ids[result.chosen],
        estimator_ids=list(rcs.estimator_ids),
        averaged_scores=result.averaged.tolist(),
        neighbor_ids=[ids[i] for i in result.neighbors],
        neighbor_distances=result.distances.tolist(),
        k=k,
        w_a=weight,
    )


def recommend(
    d: Dataset, rcs: RCS, k: int = DEFAULT_K, w_a: float | None = None
) -> Recommendation:
    """
    Recommend an estimator for ``d``: average the score vectors at ``w_a``
    (the RCS encoder's weight by default) of the ``k`` nearest RCS entries in
    embedding space and take the top one.

    Raises:
        AdvisorError: If the RCS is empty or ``k`` is out of range
        FeaturizationError: If ``d`` does not fit the feature layout
    """
    x = rcs.model.embed(d).x
    rec = recommend_embedding(x, rcs, k, w_a, dataset_id=d.id)
    logger.debug("Recommended %s for %s from %s", rec.chosen, d.id, rec.neighbor_ids)
    return rec


def flattened_graphs(rcs: RCS) -> np.ndarray:
    """Normalized feature graphs of the RCS flattened to one row each."""
    n_max = rcs.model.features.n_max_tables
    return np.vstack([flatten_graph(e.graph, n_max) for e in rcs.entries])
