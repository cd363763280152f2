"""
Incremental bounded context module.

Cross-validation feedback collection, Mixup augmentation of poorly predicted
datasets, and encoder fine-tuning on the augmented corpus.

Structure:
- domain/models: IncrementalConfig, FeedbackSplit, IncrementalResult
- domain/services: feedback collection, Mixup and incremental training
- apps.py: Django app configuration
"""
