"""
Normalized per-estimator scores and labeling outcomes.
"""

from dataclasses import dataclass, field

import numpy as np

from apps.corpus.domain.models import LabelRecord


@dataclass(frozen=True, eq=False)
class ScoreVector:
    """Scores in [0, 1] of each pool member at accuracy weight ``w_a``."""

    estimator_ids: tuple[str, ...]
    scores: np.ndarray
    w_a: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "scores", np.asarray(self.scores, dtype=np.float64))
        if self.scores.shape != (len(self.estimator_ids),):
            raise ValueError(
                f"{len(self.estimator_ids)} estimators but scores of shape "
                f"{self.scores.shape}"
            )

    def __len__(self) -> int:
        return len(self.estimator_ids)

    @property
    def best_index(self) -> int:
        """Index of the highest score; the lowest index wins ties."""
        return int(np.argmax(self.scores))

    @property
    def best_id(self) -> str:
        return self.estimator_ids[self.best_index]

    def index(self, estimator_id: str) -> int:
        return self.estimator_ids.index(estimator_id)


@dataclass(frozen=True)
class LabelFailure:
    """An estimator that could not be trained or tested on a dataset."""

    estimator_id: str
    kind: str
    message: str


@dataclass(frozen=True)
class LabelingResult:
    dataset_id: str
    records: list[LabelRecord] = field(default_factory=list)
    failures: list[LabelFailure] = field(default_factory=list)
