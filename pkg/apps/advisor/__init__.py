"""
Advisor bounded context module.

The recommendation candidate set (RCS) of embedded, labeled training
datasets; KNN recommendation over it; drift detection in raw feature-graph
space and online adaptation of the encoder to drifted datasets.

Structure:
- domain/models: RcsEntry, RCS, Recommendation, DriftReport
- domain/services: KNN core, RCS construction and recommendation, drift
- apps.py: Django app configuration
"""
