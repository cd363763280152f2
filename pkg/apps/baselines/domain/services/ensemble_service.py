"""
Weighted-average ensemble of the whole pool, scored as an extra candidate
next to the pool members.
"""

import logging
from collections.abc import Callable, Mapping, Sequence
from dataclasses import dataclass

import numpy as np

from apps.corpus.domain.models import Dataset, LabelRecord, LatencyUnit
from apps.estimators.domain.models import EstimatorSpec
from apps.estimators.domain.services import (
    EstimatorError,
    estimate,
    score_vector,
    train_estimator,
)
from apps.workload.domain.models import Workload
from apps.workload.domain.services import WorkloadError, qerror

from .selectors import SelectionError

logger = logging.getLogger(__name__)

ENSEMBLE_ID = "ensemble"

WorkloadSource = Callable[[Dataset], Workload]


def ensemble_weights(
    records_by_dataset: Mapping[str, Sequence[LabelRecord]],
    dataset_ids: Sequence[str],
    estimator_ids: Sequence[str],
    w_a: float,
) -> np.ndarray:
    """
    Member weights proportional to the mean score over ``dataset_ids``,
    summing to 1. Some member tops every dataset, so the sum is positive.

    Raises:
        SelectionError: If there are no datasets or one lacks usable labels
    """
    if not dataset_ids:
        raise SelectionError("Ensemble weights need at least one labeled dataset")
    try:
        scores = np.vstack(
            [
                score_vector(records_by_dataset[i], w_a, estimator_ids).scores
                for i in dataset_ids
            ]
        ).mean(axis=0)
    except (KeyError, EstimatorError) as e:
        raise SelectionError(f"No usable labels for ensemble weights: {e}") from e
    return scores / scores.sum()


@dataclass(frozen=True, eq=False)
class MemberRuns:
    """Per-member estimates and latencies on the test queries of one dataset."""

    estimator_ids: tuple[str, ...]
    estimates: np.ndarray
    latencies: np.ndarray
    truths: np.ndarray


def run_members(
    d: Dataset, pool: Sequence[EstimatorSpec], w: Workload, unit: LatencyUnit
) -> MemberRuns:
    """
    Train every pool member on ``d`` and estimate each test query. A member
    that fails is left out.

    Raises:
        SelectionError: If the test queries lack cardinalities or every member
            failed
    """
    if not w.test or any(q.true_card is None for q in w.test):
        raise SelectionError(f"Test queries of {d.id} lack true cardinalities")
    ids: list[str] = []
    estimates: list[list[float]] = []
    latencies: list[list[float]] = []
    for spec in pool:
        try:
            m = train_estimator(spec, d, w)
            runs = [estimate(m, q, unit) for q in w.test]
        except EstimatorError as e:
            logger.warning("Ensemble member %s failed on %s: %s", spec.id, d.id, e)
            continue
        ids.append(spec.id)
        estimates.append([card for card, _ in runs])
        latencies.append([latency for _, latency in runs])
    if not ids:
        raise SelectionError(f"Every ensemble member failed on {d.id}")
    return MemberRuns(
        estimator_ids=tuple(ids),
        estimates=np.array(estimates),
        latencies=np.array(latencies),
        truths=np.array([q.true_card for q in w.test], dtype=np.float64),
    )


def ensemble_record(
    d: Dataset, runs: MemberRuns, weights: Mapping[str, float], unit: LatencyUnit
) -> LabelRecord:
    """
    Label record of the ensemble: each query is estimated as the weighted
    average of the surviving members, weights renormalized over them, and
    costs the sum of their latencies.
    """
    w = np.array([weights[i] for i in runs.estimator_ids])
    w = w / w.sum() if w.sum() > 0 else np.full(w.shape[0], 1.0 / w.shape[0])
    combined = w @ runs.estimates
    try:
        qerrs = [
            qerror(float(est), int(t))
            for est, t in zip(combined, runs.truths, strict=True)
        ]
    except WorkloadError as e:
        raise SelectionError(f"Ensemble estimate on {d.id} failed: {e}") from e
    return LabelRecord(
        dataset_id=d.id,
        estimator_id=ENSEMBLE_ID,
        qerr_mean=float(np.mean(qerrs)),
        latency_mean=float(runs.latencies.sum(axis=0).mean()),
        unit=unit,
    )


class EnsembleCandidate:
    """
    Ensemble baseline. Members are trained once per dataset; the weights of
    each ``w_a`` come from the labeled training corpus.
    """

    def __init__(
        self,
        pool: Sequence[EstimatorSpec],
        workloads: WorkloadSource,
        records_by_dataset: Mapping[str, Sequence[LabelRecord]],
        train_ids: Sequence[str],
        unit: LatencyUnit = "cost",
    ) -> None:
        ids = [s.id for s in pool]
        if ENSEMBLE_ID in ids:
            raise SelectionError(f"Pool member id '{ENSEMBLE_ID}' is reserved")
        self.pool = list(pool)
        self.workloads = workloads
        self.records = records_by_dataset
        self.train_ids = list(train_ids)
        self.estimator_ids = tuple(ids)
        self.unit = unit
        self._runs: dict[str, MemberRuns] = {}
        self._weights: dict[float, dict[str, float]] = {}

    def weights(self, w_a: float) -> dict[str, float]:
        if w_a not in self._weights:
            w = ensemble_weights(self.records, self.train_ids, self.estimator_ids, w_a)
            self._weights[w_a] = dict(zip(self.estimator_ids, w.tolist(), strict=True))
        return self._weights[w_a]

    def record(self, d: Dataset, w_a: float) -> LabelRecord:
        if d.id not in self._runs:
            self._runs[d.id] = run_members(d, self.pool, self.workloads(d), self.unit)
        return ensemble_record(d, self._runs[d.id], self.weights(w_a), self.unit)
