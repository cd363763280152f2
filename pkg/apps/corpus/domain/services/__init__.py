"""Domain services for the corpus bounded context."""

from .label_store import LabelStore
from .storage_service import (
    MANIFEST_NAME,
    CorpusError,
    IntegrityError,
    ingest_frame,
    list_dataset_dirs,
    load_corpus,
    load_dataset,
    save_dataset,
    validate,
)

__all__ = [
    "CorpusError",
    "IntegrityError",
    "LabelStore",
    "MANIFEST_NAME",
    "ingest_frame",
    "list_dataset_dirs",
    "load_corpus",
    "load_dataset",
    "save_dataset",
    "validate",
]
