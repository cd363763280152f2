"""
Metric-learning configuration and training outcomes.
"""

from dataclasses import dataclass, field
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field

from apps.encoder.domain.services import GINEncoder

LossKind = Literal["weighted", "basic"]


class DmlConfig(BaseModel):
    """Encoder training settings for one accuracy weight ``w_a``."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    tau: float = Field(0.95, ge=-1.0, le=1.0, description="Positive-pair threshold")
    margin: float = Field(1.0, description="Negative-term margin, gamma")
    batch_size: int = Field(32, ge=2, description="Graphs per batch, m")
    epochs: int = Field(100, ge=1, description="Passes over the corpus")
    lr: float = Field(1e-3, ge=0.0, description="SGD learning rate, eta")
    w_a: float = Field(1.0, ge=0.0, le=1.0, description="Accuracy weight of labels")
    seed: int = Field(0, ge=0, description="Batch shuffling seed")
    loss: LossKind = Field("weighted", description="Contrastive loss variant")


@dataclass(frozen=True)
class EpochStats:
    epoch: int
    loss: float
    positive_ratio: float


@dataclass
class TrainingResult:
    encoder: GINEncoder
    trace: list[EpochStats] = field(default_factory=list)
