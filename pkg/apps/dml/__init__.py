"""
DML bounded context module.

Deep metric learning for the graph encoder: score-vector similarity labels,
positive/negative partition, weighted and basic contrastive losses, the
mini-batch SGD trainer and the per-weight model store.

Structure:
- domain/models: DmlConfig, EpochStats, TrainingResult
- domain/services: losses, trainer, model store
- apps.py: Django app configuration
"""
