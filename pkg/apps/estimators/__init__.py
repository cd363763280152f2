"""
Estimators bounded context module.

The pluggable pool of candidate cardinality estimators and the labeling
testbed that measures their Q-error and latency per dataset, plus score
normalization and the D-error metric.

Structure:
- domain/models: EstimatorSpec, TrainedEstimator, ScoreVector, LabelingResult
- domain/services: registry, data-driven and query-driven estimators,
  labeling, scoring
- apps.py: Django app configuration
"""
