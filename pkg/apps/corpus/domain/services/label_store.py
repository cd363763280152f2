"""
Append-only label store: one LabelRecord per line (JSON lines).
"""

from __future__ import annotations

from pathlib import Path
from typing import TYPE_CHECKING

from pydantic import ValidationError

from ..models import LabelRecord
from .storage_service import CorpusError

if TYPE_CHECKING:
    from collections.abc import Iterable


class LabelStore:
    """File-backed store of LabelRecords. Writes only ever append."""

    def __init__(self, path: Path | str) -> None:
        self.path = Path(path)

    def append(self, records: Iterable[LabelRecord]) -> int:
        """Append records; returns how many were written."""
        lines = [r.model_dump_json() + "\n" for r in records]
        if not lines:
            return 0
        try:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            with self.path.open("a", encoding="utf-8") as fh:
                fh.writelines(lines)
        except OSError as e:
            raise CorpusError(
                f"Failed to append to label store {self.path}: {e}"
            ) from e
        return len(lines)

    def read(self, dataset_id: str | None = None) -> list[LabelRecord]:
        """Read all records, optionally only those of one dataset."""
        if not self.path.is_file():
            return []
        records: list[LabelRecord] = []
        with self.path.open(encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                if not line.strip():
                    continue
                try:
                    record = LabelRecord.model_validate_json(line)
                except ValidationError as e:
                    raise CorpusError(
                        f"Malformed label record at {self.path}:{lineno}: {e}"
                    ) from e
                if dataset_id is None or record.dataset_id == dataset_id:
                    records.append(record)
        return records

    def by_dataset(self) -> dict[str, list[LabelRecord]]:
        """
        Group records by dataset, in first-seen order.

        A later record for the same (dataset, estimator) pair replaces the
        earlier one, so relabeling is an append.
        """
        grouped: dict[str, dict[str, LabelRecord]] = {}
        for record in self.read():
            grouped.setdefault(record.dataset_id, {})[record.estimator_id] = record
        return {k: list(v.values()) for k, v in grouped.items()}
