"""
Selection strategies that need no encoder: rule-based, raw-feature KNN and
the labeled oracle.
"""

import logging
from collections.abc import Callable, Mapping, Sequence
from dataclasses import dataclass

import numpy as np

from apps.advisor.domain.services import AdvisorError, knn_select
from apps.corpus.domain.models import Dataset, LabelRecord
from apps.estimators.domain.models import EstimatorSpec
from apps.estimators.domain.services import EstimatorError, score_vector
from apps.featurizer.domain.models import FeatureConfig
from apps.featurizer.domain.services import build_feature_graph, flatten_graph

logger = logging.getLogger(__name__)

Strategy = Callable[[Dataset, float], str]


class SelectionError(Exception):
    """Raised when a strategy cannot produce a pool member."""

    pass


def rule_select(
    d: Dataset, pool: Sequence[EstimatorSpec], rng: np.random.Generator
) -> str:
    """
    Uniform random data-driven member for a single-table dataset, uniform
    random query-driven member otherwise.

    Raises:
        SelectionError: If the pool has no member of the needed family
    """
    family = "data_driven" if len(d.tables) == 1 else "query_driven"
    members = [s.id for s in pool if s.family == family]
    if not members:
        raise SelectionError(f"Pool has no {family} estimator for dataset {d.id}")
    return members[int(rng.integers(0, len(members)))]


def oracle_select(
    records: Sequence[LabelRecord], w_a: float, estimator_ids: Sequence[str]
) -> str:
    """The estimator with the highest true score."""
    try:
        return score_vector(records, w_a, estimator_ids).best_id
    except EstimatorError as e:
        raise SelectionError(str(e)) from e


@dataclass(frozen=True, eq=False)
class RawKnnSelector:
    """KNN over flattened normalized feature graphs instead of embeddings."""

    features: FeatureConfig
    vectors: np.ndarray
    records: list[list[LabelRecord]]
    estimator_ids: tuple[str, ...]
    dataset_ids: list[str]

    @classmethod
    def build(
        cls,
        corpus: Sequence[Dataset],
        features: FeatureConfig,
        records_by_dataset: Mapping[str, Sequence[LabelRecord]],
        estimator_ids: Sequence[str],
    ) -> "RawKnnSelector":
        missing = [d.id for d in corpus if d.id not in records_by_dataset]
        if missing:
            raise SelectionError(f"No labels for datasets {missing}")
        return cls(
            features=features,
            vectors=np.vstack([cls._flatten(d, features) for d in corpus]),
            records=[list(records_by_dataset[d.id]) for d in corpus],
            estimator_ids=tuple(estimator_ids),
            dataset_ids=[d.id for d in corpus],
        )

    @staticmethod
    def _flatten(d: Dataset, features: FeatureConfig) -> np.ndarray:
        return flatten_graph(build_feature_graph(d, features), features.n_max_tables)

    def labels(self, w_a: float) -> np.ndarray:
        try:
            return np.vstack(
                [score_vector(r, w_a, self.estimator_ids).scores for r in self.records]
            )
        except EstimatorError as e:
            raise SelectionError(str(e)) from e

    def select(self, d: Dataset, w_a: float, k: int = 2) -> str:
        """
        Raises:
            SelectionError: If ``k`` is outside [1, corpus size]
        """
        try:
            result = knn_select(
                self.vectors, self.labels(w_a), self._flatten(d, self.features), k
            )
        except AdvisorError as e:
            raise SelectionError(str(e)) from e
        return self.estimator_ids[result.chosen]


def rawknn_select(
    corpus: Sequence[Dataset],
    d: Dataset,
    k: int,
    w_a: float,
    features: FeatureConfig,
    records_by_dataset: Mapping[str, Sequence[LabelRecord]],
    estimator_ids: Sequence[str],
) -> str:
    selector = RawKnnSelector.build(corpus, features, records_by_dataset, estimator_ids)
    return selector.select(d, w_a, k)
