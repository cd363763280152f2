"""
Label records: measured per (dataset, estimator) performance.
Serialized one JSON document per line in the label store.
"""

from typing import Literal

from pydantic import BaseModel, ConfigDict, Field

LatencyUnit = Literal["ms", "cost"]


class LabelRecord(BaseModel):
    """Mean Q-error and mean inference latency of one estimator on one dataset."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    dataset_id: str = Field(..., description="Dataset the estimator was tested on")
    estimator_id: str = Field(..., description="Pool member id")
    qerr_mean: float = Field(..., ge=1.0, description="Mean Q-error over test queries")
    latency_mean: float = Field(
        ..., ge=0.0, description="Mean per-query inference latency"
    )
    unit: LatencyUnit = Field(
        ..., description="'ms' for wall-clock, 'cost' for deterministic cost units"
    )
