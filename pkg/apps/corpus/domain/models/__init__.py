"""Domain models for the corpus bounded context."""

from .dataset import ColumnData, Dataset, JoinEdge, Table
from .labels import LabelRecord, LatencyUnit
from .manifest import FORMAT_VERSION, DatasetManifest, ManifestJoin, ManifestTable
from .validation import Violation

__all__ = [
    "ColumnData",
    "Dataset",
    "DatasetManifest",
    "FORMAT_VERSION",
    "JoinEdge",
    "LabelRecord",
    "LatencyUnit",
    "ManifestJoin",
    "ManifestTable",
    "Table",
    "Violation",
]
