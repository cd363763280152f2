"""
Encoder shape configuration and embeddings.
"""

from dataclasses import dataclass

import numpy as np
from pydantic import BaseModel, ConfigDict, Field


class EncoderConfig(BaseModel):
    """Shape of the GIN encoder. Input width comes from the FeatureConfig."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    n_layers: int = Field(3, ge=1, description="GINConv layers, L")
    hidden: int = Field(64, ge=1, description="Width of every GINConv output")
    embed_dim: int = Field(32, ge=1, description="Embedding dimension d")
    init_seed: int = Field(0, ge=0, description="Seed of the weight initialization")


@dataclass(frozen=True, eq=False)
class Embedding:
    """Encoded dataset vector."""

    x: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "x", np.asarray(self.x, dtype=np.float64))
        if self.x.ndim != 1 or not np.all(np.isfinite(self.x)):
            raise ValueError("Embedding must be a finite 1-d vector")

    def __len__(self) -> int:
        return int(self.x.shape[0])
