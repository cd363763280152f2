"""
Estimator specifications and trained estimator handles.
"""

import pickle
from dataclasses import dataclass
from typing import TYPE_CHECKING, Literal

from pydantic import BaseModel, ConfigDict, Field

if TYPE_CHECKING:
    from ..services.registry import CardEstimator

Family = Literal["data_driven", "query_driven"]


class EstimatorSpec(BaseModel):
    """
    One pool member. ``kind`` selects the registered implementation, ``id``
    names this configured instance, so a kind may appear several times.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    id: str = Field(..., min_length=1, description="Unique within a pool")
    kind: str = Field(..., min_length=1, description="Registry key")
    family: Family = Field(..., description="What the estimator trains on")
    hyperparams: dict[str, float | int | str] = Field(default_factory=dict)


@dataclass(frozen=True)
class TrainedEstimator:
    """An estimator fitted to one dataset; immutable after training."""

    spec: EstimatorSpec
    dataset_id: str
    model: "CardEstimator"
    train_time: float

    @property
    def model_state(self) -> bytes:
        return pickle.dumps(self.model)

    def dumps(self) -> bytes:
        return pickle.dumps(
            {
                "spec": self.spec.model_dump(),
                "dataset_id": self.dataset_id,
                "model_state": self.model_state,
                "train_time": self.train_time,
            }
        )

    @classmethod
    def loads(cls, blob: bytes) -> "TrainedEstimator":
        payload = pickle.loads(blob)
        return cls(
            spec=EstimatorSpec.model_validate(payload["spec"]),
            dataset_id=payload["dataset_id"],
            model=pickle.loads(payload["model_state"]),
            train_time=payload["train_time"],
        )
