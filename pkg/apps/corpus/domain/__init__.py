"""Domain layer for the corpus bounded context."""

from .models import ColumnData, Dataset, JoinEdge, LabelRecord, Table, Violation
from .services import (
    CorpusError,
    IntegrityError,
    LabelStore,
    load_dataset,
    save_dataset,
    validate,
)

__all__ = [
    "ColumnData",
    "CorpusError",
    "Dataset",
    "IntegrityError",
    "JoinEdge",
    "LabelRecord",
    "LabelStore",
    "Table",
    "Violation",
    "load_dataset",
    "save_dataset",
    "validate",
]
