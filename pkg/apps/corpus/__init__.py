"""
Corpus bounded context module.

Data model and persistence for datasets, schema graphs, label records and run
artifacts. Every other context reads datasets through this one.

Structure:
- domain/models: Dataset, Table, ColumnData, JoinEdge, LabelRecord, manifests
- domain/services: directory storage, validation, categorical ingest, label store
- apps.py: Django app configuration
"""
