"""
Featurizer bounded context module.

Turns a dataset into a feature graph: one vertex per table carrying column
statistics, the column correlation block and table size, and one weighted
edge per PK-FK join carrying its join correlation.

Structure:
- domain/models: FeatureConfig, FeatureGraph
- domain/services: statistics extraction, graph assembly, normalization fit,
  flattening for raw-feature distances
- apps.py: Django app configuration
"""
