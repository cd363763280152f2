"""
Sampling strategy: label the pool on a row sample of the dataset and pick
the best estimator there.
"""

import logging
from collections.abc import Sequence

import numpy as np

from apps.corpus.domain.models import Dataset, LabelRecord, LatencyUnit
from apps.estimators.domain.models import EstimatorSpec
from apps.estimators.domain.services import label_dataset
from apps.workload.domain.models import WorkloadParams
from apps.workload.domain.services import gen_workload

from .selectors import SelectionError, oracle_select

logger = logging.getLogger(__name__)

DEFAULT_SAMPLE_RATE = 0.1


def sample_dataset(d: Dataset, rate: float, rng: np.random.Generator) -> Dataset:
    """
    Bernoulli row sample of every table. FK rows whose key lost its PK row
    are dropped until no dangling reference remains.

    Raises:
        SelectionError: If ``rate`` is outside (0, 1] or no row survives
    """
    if not 0.0 < rate <= 1.0:
        raise SelectionError(f"Sample rate must lie in (0, 1], got {rate}")
    tables = {t.name: t.take(rng.random(t.n_rows) < rate) for t in d.tables}

    changed = True
    while changed:
        changed = False
        for edge in d.joins:
            pk_values = tables[edge.pk_table].column(edge.pk_column).values
            fk = tables[edge.fk_table]
            keep = np.isin(fk.column(edge.fk_column).values, pk_values)
            if not keep.all():
                tables[edge.fk_table] = fk.take(keep)
                changed = True

    sample = d.replace_tables([tables[name] for name in d.table_names])
    if sample.total_rows == 0:
        raise SelectionError(f"Sample of {d.id} at rate {rate} is empty")
    logger.debug(
        "Sampled %s at %.3f: %d of %d rows", d.id, rate, sample.total_rows, d.total_rows
    )
    return sample


def sample_labels(
    d: Dataset,
    pool: Sequence[EstimatorSpec],
    sample_rate: float,
    workload: WorkloadParams,
    seed: int = 0,
    unit: LatencyUnit = "cost",
) -> list[LabelRecord]:
    """Label records of the pool measured on a sample of ``d``."""
    sample = sample_dataset(d, sample_rate, np.random.default_rng([seed, 7]))
    w = gen_workload(
        sample,
        workload.n_train,
        workload.n_test,
        workload.pred_prob,
        np.random.default_rng(seed),
    )
    return label_dataset(sample, pool, w, unit).records


def sampling_select(
    d: Dataset,
    pool: Sequence[EstimatorSpec],
    sample_rate: float,
    workload: WorkloadParams,
    w_a: float,
    seed: int = 0,
    unit: LatencyUnit = "cost",
) -> str:
    """
    Raises:
        SelectionError: On an empty sample or when fewer than two pool members
            could be labeled on it
    """
    records = sample_labels(d, pool, sample_rate, workload, seed, unit)
    return oracle_select(records, w_a, [r.estimator_id for r in records])


class SamplingSelector:
    """``sampling_select`` that labels each dataset once for every ``w_a``."""

    def __init__(
        self,
        pool: Sequence[EstimatorSpec],
        workload: WorkloadParams,
        sample_rate: float = DEFAULT_SAMPLE_RATE,
        seed: int = 0,
        unit: LatencyUnit = "cost",
    ) -> None:
        self.pool = list(pool)
        self.workload = workload
        self.sample_rate = sample_rate
        self.seed = seed
        self.unit = unit
        self._records: dict[str, list[LabelRecord]] = {}

    def select(self, d: Dataset, w_a: float) -> str:
        if d.id not in self._records:
            self._records[d.id] = sample_labels(
                d, self.pool, self.sample_rate, self.workload, self.seed, self.unit
            )
        records = self._records[d.id]
        return oracle_select(records, w_a, [r.estimator_id for r in records])
