"""
Datagen bounded context module.

Synthetic relational datasets with controlled skewness, column correlation
and PK-FK join correlation. Generated corpora are what the advisor learns from.

Structure:
- domain/models: GenParams and the regime presets
- domain/services: column sampler, single/multi-table generators, corpus fan-out
- apps.py: Django app configuration
"""
