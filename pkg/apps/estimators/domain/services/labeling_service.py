"""
Labeling testbed: train each pool member on a dataset, run the test queries,
and record mean Q-error and mean latency.
"""

import logging
import time
from collections.abc import Sequence

import numpy as np

from apps.corpus.domain.models import Dataset, LabelRecord, LatencyUnit
from apps.corpus.domain.services import LabelStore
from apps.workload.domain.models import Query, Workload
from apps.workload.domain.services import WorkloadError, qerror

from ..models import EstimatorSpec, LabelFailure, LabelingResult, TrainedEstimator
from .registry import (
    EstimatorError,
    MissingCardinalityError,
    check_pool,
    get_estimator_class,
)

logger = logging.getLogger(__name__)


class LabelingError(Exception):
    """Raised when a dataset cannot be labeled at all."""

    pass


def train_estimator(
    spec: EstimatorSpec, d: Dataset, w: Workload | None = None
) -> TrainedEstimator:
    """
    Fit ``spec`` to ``d``. Data-driven kinds see only the dataset,
    query-driven kinds only the labeled training queries.

    Raises:
        UnknownEstimatorError: If ``spec.kind`` is not registered
        MissingCardinalityError: If query-driven training data lacks true_card
        EstimatorError: On any other training failure
    """
    cls = get_estimator_class(spec.kind)
    model = cls(**spec.hyperparams)
    train: Sequence[Query] = ()
    if cls.family == "query_driven":
        if w is None:
            raise MissingCardinalityError(
                f"{spec.id} is query-driven and needs a labeled workload"
            )
        train = w.train

    start = time.perf_counter()
    try:
        model.fit(d, train)
    except (ValueError, np.linalg.LinAlgError) as e:
        raise EstimatorError(f"Training {spec.id} on {d.id} failed: {e}") from e
    return TrainedEstimator(
        spec=spec, dataset_id=d.id, model=model, train_time=time.perf_counter() - start
    )


def estimate(
    m: TrainedEstimator, q: Query, unit: LatencyUnit = "cost"
) -> tuple[float, float]:
    """
    Returns:
        (estimate >= 1.0, latency in ``unit``: cost units or milliseconds)
    """
    start = time.perf_counter()
    card, cost = m.model.estimate(q)
    elapsed_ms = (time.perf_counter() - start) * 1000.0
    return card, float(cost) if unit == "cost" else elapsed_ms


def _measure(
    m: TrainedEstimator, test: Sequence[Query], unit: LatencyUnit
) -> tuple[float, float]:
    qerrs, latencies = [], []
    for q in test:
        card, latency = estimate(m, q, unit)
        assert q.true_card is not None
        qerrs.append(qerror(card, q.true_card))
        latencies.append(latency)
    return float(np.mean(qerrs)), float(np.mean(latencies))


def label_dataset(
    d: Dataset,
    pool: Sequence[EstimatorSpec],
    w: Workload,
    unit: LatencyUnit = "cost",
    store: LabelStore | None = None,
) -> LabelingResult:
    """
    Label ``d`` with every pool member.

    A member that fails to train or estimate is reported in
    ``LabelingResult.failures`` and gets no record.

    Raises:
        LabelingError: If the test split is empty or unlabeled
        EstimatorError: If the pool itself is malformed
    """
    check_pool(pool)
    if not w.test:
        raise LabelingError(f"Dataset '{d.id}' has no test queries")
    if any(q.true_card is None for q in w.test):
        raise LabelingError(f"Test queries of dataset '{d.id}' lack true cardinalities")

    records: list[LabelRecord] = []
    failures: list[LabelFailure] = []
    for spec in pool:
        try:
            m = train_estimator(spec, d, w)
            qerr_mean, latency_mean = _measure(m, w.test, unit)
        except (EstimatorError, WorkloadError) as e:
            logger.warning("Estimator %s failed on %s: %s", spec.id, d.id, e)
            failures.append(LabelFailure(spec.id, type(e).__name__, str(e)))
            continue
        records.append(
            LabelRecord(
                dataset_id=d.id,
                estimator_id=spec.id,
                qerr_mean=qerr_mean,
                latency_mean=latency_mean,
                unit=unit,
            )
        )

    if store is not None:
        store.append(records)
    logger.info(
        "Labeled %s: %d records, %d failures", d.id, len(records), len(failures)
    )
    return LabelingResult(dataset_id=d.id, records=records, failures=failures)
