"""
Baselines bounded context module.

Comparison selection strategies and the evaluation harness that scores any
strategy by D-error against the labeled optimum.

Structure:
- domain/models: EvalRow, SelectionTiming, StrategySummary, EvalReport
- domain/services: rule, raw-feature KNN, MLP, sampling and oracle
  strategies; evaluation and report files
- apps.py: Django app configuration
"""
