"""
Versioned on-disk encoder format.

Arrays travel as shape plus base64 of little-endian float64 bytes, so a file
is plain JSON and round-trips bit-exactly.
"""

import base64

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from apps.featurizer.domain.models import FeatureConfig

from .encoder_config import EncoderConfig

MODEL_FORMAT_VERSION = 1


class ArrayBlob(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    shape: list[int]
    data: str = Field(..., description="base64 of little-endian float64 bytes")

    @classmethod
    def from_array(cls, a: np.ndarray) -> "ArrayBlob":
        raw = np.ascontiguousarray(a, dtype="<f8").tobytes()
        return cls(shape=list(a.shape), data=base64.b64encode(raw).decode("ascii"))

    def to_array(self) -> np.ndarray:
        raw = base64.b64decode(self.data.encode("ascii"))
        return np.frombuffer(raw, dtype="<f8").astype(np.float64).reshape(self.shape)


class ModelFile(BaseModel):
    """A trained encoder together with the feature layout it was trained on."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    format_version: int = Field(MODEL_FORMAT_VERSION, description="File format")
    w_a: float = Field(..., ge=0.0, le=1.0, description="Accuracy weight trained for")
    encoder: EncoderConfig
    features: FeatureConfig
    params: dict[str, ArrayBlob] = Field(..., description="Parameters by name")
