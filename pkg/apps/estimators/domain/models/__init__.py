"""Domain models for the estimators bounded context."""

from .estimator import EstimatorSpec, Family, TrainedEstimator
from .scores import LabelFailure, LabelingResult, ScoreVector

__all__ = [
    "EstimatorSpec",
    "Family",
    "LabelFailure",
    "LabelingResult",
    "ScoreVector",
    "TrainedEstimator",
]
