"""
Incremental learning configuration and outcomes.
"""

from dataclasses import dataclass

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from apps.encoder.domain.services import GINEncoder


class IncrementalConfig(BaseModel):
    """Feedback collection and Mixup settings."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    folds: int = Field(5, ge=2, description="Cross-validation folds, xi")
    derr_threshold: float = Field(
        0.1, gt=0.0, description="D-error above which a dataset is feedback, b"
    )
    alpha: float = Field(1.0, gt=0.0, description="Beta prior alpha for lambda")
    beta: float = Field(1.0, gt=0.0, description="Beta prior beta for lambda")
    extra_epochs: int = Field(20, ge=1, description="Fine-tuning epochs")
    k: int = Field(2, ge=1, description="Neighbors for validation recommendations")
    seed: int = Field(0, ge=0, description="Fold assignment and lambda seed")
    keep_if_worse: bool = Field(
        False, description="Keep the fine-tuned encoder even if D-error regressed"
    )
    augment: bool = Field(
        True, description="Add Mixup samples; off fine-tunes on the corpus alone"
    )


@dataclass(frozen=True, eq=False)
class FeedbackSplit:
    """
    Per-dataset cross-validation outcome. ``feedback`` and ``reference`` are
    disjoint index lists covering the corpus.
    """

    folds: np.ndarray
    derrors: np.ndarray
    chosen: np.ndarray
    feedback: list[int]
    reference: list[int]

    @property
    def mean_derror(self) -> float:
        return float(self.derrors.mean())


@dataclass
class IncrementalResult:
    encoder: GINEncoder
    before: FeedbackSplit
    after: FeedbackSplit
    n_synthetic: int
    accepted: bool

    @property
    def final(self) -> FeedbackSplit:
        """Cross-validation outcome of the encoder that was kept."""
        return self.after if self.accepted else self.before
