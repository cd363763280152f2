"""
Drift detection against the RCS and online adaptation.

Distances are measured between flattened, unnormalized feature graphs, so a
dataset far outside the training corpus is not hidden by normalization
clamps.
"""

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from apps.corpus.domain.models import Dataset, LabelRecord, LatencyUnit
from apps.dml.domain.models import DmlConfig
from apps.dml.domain.services import pairwise_distances, train_encoder
from apps.encoder.domain.services import TrainedEncoder
from apps.estimators.domain.models import EstimatorSpec
from apps.estimators.domain.services import label_dataset
from apps.featurizer.domain.services import (
    drift_layout,
    drift_vector,
    widen_drift_vectors,
)
from apps.workload.domain.models import Workload, WorkloadParams
from apps.workload.domain.services import gen_workload

from ..models import RCS, DriftReport, RcsEntry
from .knn_service import AdvisorError
from .rcs_service import embed_entry, rcs_labels

logger = logging.getLogger(__name__)

DRIFT_PERCENTILE = 90.0


class DriftError(AdvisorError):
    """Raised when a drift threshold cannot be derived."""

    pass


def nearest_rank_percentile(values: Sequence[float] | np.ndarray, q: float) -> float:
    """Smallest value with at least ``q`` percent of values at or below it."""
    ordered = np.sort(np.asarray(values, dtype=np.float64))
    if ordered.shape[0] == 0:
        raise DriftError("Percentile of no values")
    rank = max(math.ceil(q * ordered.shape[0] / 100.0), 1)
    return float(ordered[rank - 1])


def drift_threshold(rcs: RCS) -> float:
    """
    90th nearest-rank percentile of each member's leave-one-out nearest
    distance.

    Raises:
        DriftError: If the RCS has fewer than two members
    """
    if len(rcs) < 2:
        raise DriftError(
            f"Drift threshold needs at least 2 RCS members, got {len(rcs)}"
        )
    u = pairwise_distances(rcs.drift_vectors())
    np.fill_diagonal(u, np.inf)
    return nearest_rank_percentile(u.min(axis=1), DRIFT_PERCENTILE)


def drift_distance(d: Dataset, rcs: RCS) -> tuple[float, str]:
    """
    (distance to the closest RCS member, that member's id).

    A dataset with more tables or columns than the training layout is compared
    in a layout wide enough for both, the members zero padded.
    """
    if not rcs.entries:
        raise AdvisorError("Cannot measure drift against an empty RCS")
    cfg = rcs.model.features
    layout = drift_layout(d, cfg)
    members = widen_drift_vectors(rcs.drift_vectors(), cfg, layout)
    distances = np.linalg.norm(members - drift_vector(d, cfg, layout), axis=1)
    nearest = int(np.argmin(distances))
    return float(distances[nearest]), rcs.entries[nearest].dataset_id


def detect_drift(d: Dataset, rcs: RCS, threshold: float) -> bool:
    """True iff ``d`` is farther than ``threshold`` from every RCS member."""
    return drift_distance(d, rcs)[0] > threshold


def check_drift(d: Dataset, rcs: RCS, threshold: float | None = None) -> DriftReport:
    limit = drift_threshold(rcs) if threshold is None else threshold
    distance, nearest_id = drift_distance(d, rcs)
    report = DriftReport(
        dataset_id=d.id,
        distance=distance,
        nearest_id=nearest_id,
        threshold=limit,
        drift=distance > limit,
    )
    logger.info(
        "Drift check %s: distance %.4g vs threshold %.4g -> %s",
        d.id, distance, limit, "drift" if report.drift else "in distribution",
    )
    return report


@dataclass
class AdaptResult:
    rcs: RCS
    model: TrainedEncoder
    records: list[LabelRecord]
    workload: Workload


def online_adapt(
    d: Dataset,
    rcs: RCS,
    pool: Sequence[EstimatorSpec],
    workload: WorkloadParams,
    dml: DmlConfig,
    seed: int = 0,
    unit: LatencyUnit = "cost",
) -> AdaptResult:
    """
    Label a drifted dataset, add it to the RCS, fine-tune the encoder on the
    grown RCS for ``dml.epochs`` epochs and re-embed every member.

    The input RCS and its encoder are left untouched.

    Raises:
        LabelingError: If ``d`` cannot be labeled
        AdvisorError: If ``d`` does not fit the encoder's feature layout or
            some pool member failed on it
    """
    features = rcs.model.features
    if drift_layout(d, features) != (features.m_max_cols, features.n_max_tables):
        raise AdvisorError(
            f"Dataset {d.id} exceeds the encoder layout of "
            f"{features.n_max_tables} tables and {features.m_max_cols} columns; "
            "retrain on a corpus holding it"
        )
    w = gen_workload(
        d, workload.n_train, workload.n_test, workload.pred_prob,
        np.random.default_rng(seed),
    )
    result = label_dataset(d, pool, w, unit)
    labeled = {r.estimator_id for r in result.records}
    missing = [i for i in rcs.estimator_ids if i not in labeled]
    if missing:
        raise AdvisorError(f"Labeling {d.id} failed for estimators {missing}")

    grown = RCS(
        model=rcs.model,
        estimator_ids=rcs.estimator_ids,
        entries=[*rcs.entries, embed_entry(d, rcs.model, result.records)],
    )
    graphs = [e.graph for e in grown.entries]
    labels = rcs_labels(grown, dml.w_a)
    cfg = dml.model_copy(update={"batch_size": min(dml.batch_size, len(graphs))})
    trained = train_encoder(graphs, labels, cfg, encoder=rcs.model.encoder)
    model = TrainedEncoder(
        encoder=trained.encoder, features=rcs.model.features, w_a=rcs.model.w_a
    )

    embeddings = model.encoder.encode_many(graphs)
    entries = [
        RcsEntry(
            dataset_id=e.dataset_id,
            embedding=x,
            records=e.records,
            graph=e.graph,
            drift=e.drift,
        )
        for e, x in zip(grown.entries, embeddings, strict=True)
    ]
    logger.info("Adapted to %s; RCS now holds %d datasets", d.id, len(entries))
    return AdaptResult(
        rcs=RCS(model=model, estimator_ids=rcs.estimator_ids, entries=entries),
        model=model,
        records=result.records,
        workload=w,
    )
