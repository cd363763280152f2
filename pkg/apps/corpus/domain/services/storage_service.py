"""
Dataset storage service: directory persistence, validation and ingest.
A dataset directory holds ``manifest.json`` plus one ``<table>.csv`` per table.
"""

from __future__ import annotations

import logging
from collections import Counter
from pathlib import Path
from typing import TYPE_CHECKING

import numpy as np
import pandas as pd
from pydantic import ValidationError

from ..models import (
    FORMAT_VERSION,
    ColumnData,
    Dataset,
    DatasetManifest,
    JoinEdge,
    ManifestJoin,
    ManifestTable,
    Table,
    Violation,
)

if TYPE_CHECKING:
    from collections.abc import Sequence

logger = logging.getLogger(__name__)

MANIFEST_NAME = "manifest.json"


class CorpusError(Exception):
    """Raised when a dataset cannot be read, written or ingested."""

    pass


class IntegrityError(CorpusError):
    """Raised when a dataset breaks its typed invariants."""

    def __init__(self, dataset_id: str, violations: Sequence[Violation]) -> None:
        self.dataset_id = dataset_id
        self.violations = list(violations)
        summary = "; ".join(str(v) for v in self.violations)
        super().__init__(f"Dataset '{dataset_id}' is invalid: {summary}")


def validate(d: Dataset) -> list[Violation]:
    """
    Check every dataset invariant.

    Returns:
        An empty list iff the dataset is valid; one Violation per broken rule
        otherwise. Never raises.
    """
    violations: list[Violation] = []

    names = Counter(t.name for t in d.tables)
    for name, count in names.items():
        if count > 1:
            violations.append(Violation("duplicate_table", name, f"{count} tables"))
        if not name or "/" in name or "\\" in name:
            violations.append(Violation("bad_name", name, "unusable table name"))

    for t in d.tables:
        violations.extend(_validate_table(t))

    tables = {t.name: t for t in d.tables}
    seen: set[JoinEdge] = set()
    for edge in d.joins:
        label = str(edge)
        if edge in seen:
            violations.append(Violation("duplicate_join", edge.fk_table, label))
            continue
        seen.add(edge)
        if edge.pk_table == edge.fk_table:
            violations.append(Violation("self_loop", edge.fk_table, label))
            continue
        pk_t, fk_t = tables.get(edge.pk_table), tables.get(edge.fk_table)
        if pk_t is None or fk_t is None:
            missing = edge.pk_table if pk_t is None else edge.fk_table
            violations.append(Violation("missing_table", missing, label))
            continue
        if not pk_t.has_column(edge.pk_column) or not fk_t.has_column(edge.fk_column):
            violations.append(Violation("missing_column", edge.fk_table, label))
            continue
        if pk_t.pk != edge.pk_column:
            violations.append(
                Violation("not_primary_key", edge.pk_table, f"{label} (pk={pk_t.pk})")
            )
            continue
        fk_values = np.unique(fk_t.column(edge.fk_column).values)
        pk_values = pk_t.column(edge.pk_column).values
        dangling = fk_values[~np.isin(fk_values, pk_values)]
        if dangling.size:
            violations.append(
                Violation(
                    "referential_integrity",
                    edge.fk_table,
                    f"{edge.fk_table}.{edge.fk_column} has {dangling.size} value(s) "
                    f"absent from {edge.pk_table}.{edge.pk_column}",
                )
            )
    return violations


def _validate_table(t: Table) -> list[Violation]:
    violations: list[Violation] = []
    if not t.columns:
        return [Violation("no_columns", t.name, "table has no columns")]

    column_names = Counter(t.column_names)
    for name, count in column_names.items():
        if count > 1:
            violations.append(Violation("duplicate_column", t.name, name))

    lengths = {len(c) for c in t.columns}
    if len(lengths) > 1:
        violations.append(
            Violation("ragged_columns", t.name, f"column lengths {sorted(lengths)}")
        )
    for c in t.columns:
        if c.values.size and int(c.values.min()) < 0:
            violations.append(Violation("negative_value", t.name, c.name))

    if t.pk is not None:
        if not t.has_column(t.pk):
            violations.append(Violation("missing_pk", t.name, t.pk))
        else:
            values = t.column(t.pk).values
            if np.unique(values).shape[0] != values.shape[0]:
                violations.append(Violation("duplicate_pk", t.name, t.pk))
    for name in t.dictionaries:
        if not t.has_column(name):
            violations.append(Violation("orphan_dictionary", t.name, name))
    return violations


def save_dataset(d: Dataset, directory: Path | str) -> None:
    """
    Persist a dataset as CSV files plus a schema manifest.

    Raises:
        IntegrityError: If the dataset is invalid at write time
        CorpusError: If the directory cannot be written
    """
    violations = validate(d)
    if violations:
        raise IntegrityError(d.id, violations)

    root = Path(directory)
    manifest = DatasetManifest(
        format_version=FORMAT_VERSION,
        dataset_id=d.id,
        tables=[
            ManifestTable(
                name=t.name,
                file=f"{t.name}.csv",
                columns=t.column_names,
                rows=t.n_rows,
                pk=t.pk,
                dictionaries=t.dictionaries,
            )
            for t in d.tables
        ],
        joins=[ManifestJoin(**vars(edge)) for edge in d.joins],
    )
    try:
        root.mkdir(parents=True, exist_ok=True)
        for t in d.tables:
            frame = pd.DataFrame({c.name: c.values for c in t.columns})
            frame.to_csv(
                root / f"{t.name}.csv",
                index=False,
                encoding="utf-8",
                lineterminator="\n",
            )
        (root / MANIFEST_NAME).write_text(
            manifest.model_dump_json(indent=2) + "\n", encoding="utf-8"
        )
    except OSError as e:
        raise CorpusError(f"Failed to write dataset '{d.id}' to {root}: {e}") from e

    logger.debug("Saved dataset %s (%d tables) to %s", d.id, len(d.tables), root)


def load_dataset(directory: Path | str) -> Dataset:
    """
    Load a dataset directory written by ``save_dataset``.

    Raises:
        CorpusError: If the manifest or a table CSV is missing or malformed
        IntegrityError: If the loaded data breaks an invariant
    """
    root = Path(directory)
    manifest_path = root / MANIFEST_NAME
    if not manifest_path.is_file():
        raise CorpusError(f"No {MANIFEST_NAME} in {root}")

    try:
        manifest = DatasetManifest.model_validate_json(
            manifest_path.read_text(encoding="utf-8")
        )
    except ValidationError as e:
        raise CorpusError(f"Malformed manifest {manifest_path}: {e}") from e
    if manifest.format_version != FORMAT_VERSION:
        raise CorpusError(
            f"Unsupported manifest format_version {manifest.format_version} "
            f"(expected {FORMAT_VERSION})"
        )

    tables: list[Table] = []
    for entry in manifest.tables:
        csv_path = root / entry.file
        if not csv_path.is_file():
            raise CorpusError(
                f"Table '{entry.name}' of dataset '{manifest.dataset_id}' "
                f"is missing its CSV file {csv_path.name}"
            )
        try:
            frame = pd.read_csv(csv_path, dtype="int64", encoding="utf-8")
        except (ValueError, OSError) as e:
            raise CorpusError(f"Table '{entry.name}' is unreadable: {e}") from e
        if list(frame.columns) != entry.columns:
            raise CorpusError(
                f"Table '{entry.name}' columns {list(frame.columns)} do not match "
                f"manifest {entry.columns}"
            )
        tables.append(
            Table(
                name=entry.name,
                columns=[
                    ColumnData(name, frame[name].to_numpy(dtype=np.int64))
                    for name in entry.columns
                ],
                pk=entry.pk,
                dictionaries=entry.dictionaries,
            )
        )

    dataset = Dataset(
        id=manifest.dataset_id,
        tables=tables,
        joins=[JoinEdge(**j.model_dump()) for j in manifest.joins],
    )
    violations = validate(dataset)
    if violations:
        raise IntegrityError(dataset.id, violations)
    return dataset


def list_dataset_dirs(root: Path | str) -> list[Path]:
    """Dataset directories directly under ``root``, sorted by name."""
    base = Path(root)
    if not base.is_dir():
        raise CorpusError(f"Corpus directory {base} does not exist")
    return sorted(p for p in base.iterdir() if (p / MANIFEST_NAME).is_file())


def load_corpus(root: Path | str) -> list[Dataset]:
    """Load every dataset directory under ``root``."""
    return [load_dataset(p) for p in list_dataset_dirs(root)]


def ingest_frame(name: str, frame: pd.DataFrame, pk: str | None = None) -> Table:
    """
    Integer-encode a DataFrame into a Table.

    String and categorical columns are dictionary-encoded to 1-based codes in
    sorted label order; integer and boolean columns are kept as they are.

    Raises:
        CorpusError: On float columns, negative integers or missing values
    """
    columns: list[ColumnData] = []
    dictionaries: dict[str, list[str]] = {}
    for col in frame.columns:
        series = frame[col]
        col_name = str(col)
        if series.isna().any():
            raise CorpusError(f"Column '{name}.{col_name}' contains missing values")
        if pd.api.types.is_bool_dtype(series):
            values = series.astype("int64").to_numpy()
        elif pd.api.types.is_integer_dtype(series):
            values = series.to_numpy(dtype=np.int64)
            if values.size and int(values.min()) < 0:
                raise CorpusError(f"Column '{name}.{col_name}' has negative values")
        elif pd.api.types.is_float_dtype(series):
            raise CorpusError(
                f"Column '{name}.{col_name}' is floating point; "
                "only discrete domains are supported"
            )
        else:
            labels = sorted(series.astype(str).unique().tolist())
            codes = {label: i + 1 for i, label in enumerate(labels)}
            values = series.astype(str).map(codes).to_numpy(dtype=np.int64)
            dictionaries[col_name] = labels
        columns.append(ColumnData(col_name, values))
    return Table(name=name, columns=columns, pk=pk, dictionaries=dictionaries)
