"""
Recommendation candidate set and advisor outputs.
"""

from dataclasses import dataclass, field

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from apps.corpus.domain.models import LabelRecord
from apps.encoder.domain.services import TrainedEncoder
from apps.estimators.domain.models import ScoreVector
from apps.featurizer.domain.models import FeatureGraph


@dataclass(frozen=True, eq=False)
class RcsEntry:
    """One labeled training dataset as the advisor sees it."""

    dataset_id: str
    embedding: np.ndarray
    records: list[LabelRecord]
    graph: FeatureGraph
    drift: np.ndarray


@dataclass
class RCS:
    """
    Labeled embeddings produced by ``model``. Score vectors are derived from
    the raw records at query time, so one RCS serves any ``w_a``.
    """

    model: TrainedEncoder
    estimator_ids: tuple[str, ...]
    entries: list[RcsEntry] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def w_a(self) -> float:
        return self.model.w_a

    @property
    def dataset_ids(self) -> list[str]:
        return [e.dataset_id for e in self.entries]

    def embeddings(self) -> np.ndarray:
        return np.vstack([e.embedding for e in self.entries])

    def drift_vectors(self) -> np.ndarray:
        return np.vstack([e.drift for e in self.entries])


class Recommendation(BaseModel):
    """Chosen estimator and the averaged neighbor scores behind the choice."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    dataset_id: str
    chosen: str = Field(..., description="Estimator id with the top averaged score")
    estimator_ids: list[str]
    averaged_scores: list[float]
    neighbor_ids: list[str] = Field(..., description="Nearest first")
    neighbor_distances: list[float]
    k: int = Field(..., ge=1)
    w_a: float = Field(..., ge=0.0, le=1.0)

    def score_vector(self) -> ScoreVector:
        return ScoreVector(
            tuple(self.estimator_ids), np.array(self.averaged_scores), self.w_a
        )


class DriftReport(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    dataset_id: str
    distance: float = Field(..., description="Raw feature-graph distance to the RCS")
    nearest_id: str
    threshold: float
    drift: bool
