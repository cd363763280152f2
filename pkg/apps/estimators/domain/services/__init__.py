"""Domain services for the estimators bounded context."""

from .data_driven import ChainBayes, EquiDepthHistogram, HistAvi, SampleEval
from .labeling_service import LabelingError, estimate, label_dataset, train_estimator
from .query_driven import QdLinear, QdMlp, QueryFeaturizer
from .registry import (
    REFERENCE_KINDS,
    CardEstimator,
    EstimatorError,
    MissingCardinalityError,
    UnknownEstimatorError,
    check_pool,
    get_estimator_class,
    reference_pool,
    register_estimator,
    registered_kinds,
)
from .scoring_service import D_ERROR_EPS, d_error, score_vector

__all__ = [
    "CardEstimator",
    "ChainBayes",
    "D_ERROR_EPS",
    "EquiDepthHistogram",
    "EstimatorError",
    "HistAvi",
    "LabelingError",
    "MissingCardinalityError",
    "QdLinear",
    "QdMlp",
    "QueryFeaturizer",
    "REFERENCE_KINDS",
    "SampleEval",
    "UnknownEstimatorError",
    "check_pool",
    "d_error",
    "estimate",
    "get_estimator_class",
    "label_dataset",
    "reference_pool",
    "register_estimator",
    "registered_kinds",
    "score_vector",
    "train_estimator",
]
