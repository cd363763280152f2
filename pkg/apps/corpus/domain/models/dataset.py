"""
Dataset aggregate: integer-encoded tables plus the PK-FK schema graph.
The dataset is the unit of advice; everything downstream consumes it read-only.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING

import numpy as np

if TYPE_CHECKING:
    from collections.abc import Iterator, Sequence


@dataclass(frozen=True, eq=False)
class ColumnData:
    """A named column of non-negative integers (value-encoded domain)."""

    name: str
    values: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", np.asarray(self.values, dtype=np.int64))

    def __len__(self) -> int:
        return int(self.values.shape[0])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ColumnData):
            return NotImplemented
        return self.name == other.name and np.array_equal(self.values, other.values)

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"ColumnData(name='{self.name}', rows={len(self)})"

    @property
    def n_distinct(self) -> int:
        return int(np.unique(self.values).shape[0])


@dataclass(frozen=True)
class Table:
    """
    A relational table.

    ``dictionaries`` maps a column name to the original category labels of a
    dictionary-encoded string column; code ``i`` stands for
    ``dictionaries[name][i - 1]``.
    """

    name: str
    columns: list[ColumnData]
    pk: str | None = None
    dictionaries: dict[str, list[str]] = field(default_factory=dict)

    @property
    def n_rows(self) -> int:
        return len(self.columns[0]) if self.columns else 0

    @property
    def column_names(self) -> list[str]:
        return [c.name for c in self.columns]

    def column(self, name: str) -> ColumnData:
        for c in self.columns:
            if c.name == name:
                return c
        raise KeyError(f"Table '{self.name}' has no column '{name}'")

    def has_column(self, name: str) -> bool:
        return any(c.name == name for c in self.columns)

    def select(self, names: Sequence[str]) -> Table:
        """Return a projection onto ``names`` (order preserved, no PK)."""
        return Table(name=self.name, columns=[self.column(n) for n in names])

    def take(self, rows: np.ndarray) -> Table:
        """Return the table restricted to the given row indices or mask."""
        return Table(
            name=self.name,
            columns=[ColumnData(c.name, c.values[rows]) for c in self.columns],
            pk=self.pk,
            dictionaries=self.dictionaries,
        )


@dataclass(frozen=True)
class JoinEdge:
    """PK-FK join: ``fk_table.fk_column`` references ``pk_table.pk_column``."""

    pk_table: str
    pk_column: str
    fk_table: str
    fk_column: str

    def __str__(self) -> str:
        return (
            f"{self.pk_table}.{self.pk_column} = {self.fk_table}.{self.fk_column}"
        )


@dataclass(frozen=True)
class Dataset:
    """
    A dataset D_i: named tables and the join edges between them.

    Acts as the aggregate root of the corpus context.
    """

    id: str
    tables: list[Table]
    joins: list[JoinEdge] = field(default_factory=list)

    def __iter__(self) -> Iterator[Table]:
        return iter(self.tables)

    @property
    def table_names(self) -> list[str]:
        return [t.name for t in self.tables]

    @property
    def total_rows(self) -> int:
        return sum(t.n_rows for t in self.tables)

    def table(self, name: str) -> Table:
        for t in self.tables:
            if t.name == name:
                return t
        raise KeyError(f"Dataset '{self.id}' has no table '{name}'")

    def table_index(self, name: str) -> int:
        return self.table_names.index(name)

    def key_columns(self, table: str) -> set[str]:
        """PK and FK column names of ``table``."""
        keys: set[str] = set()
        t = self.table(table)
        if t.pk is not None:
            keys.add(t.pk)
        for edge in self.joins:
            if edge.pk_table == table:
                keys.add(edge.pk_column)
            if edge.fk_table == table:
                keys.add(edge.fk_column)
        return keys

    def attribute_columns(self, table: str) -> list[str]:
        """Non-key columns of ``table`` in declaration order."""
        keys = self.key_columns(table)
        return [n for n in self.table(table).column_names if n not in keys]

    def neighbors(self, table: str) -> list[tuple[str, JoinEdge]]:
        """Tables joined to ``table``, with the edge connecting them."""
        out: list[tuple[str, JoinEdge]] = []
        for edge in self.joins:
            if edge.pk_table == table:
                out.append((edge.fk_table, edge))
            elif edge.fk_table == table:
                out.append((edge.pk_table, edge))
        return out

    def replace_tables(self, tables: list[Table], new_id: str | None = None) -> Dataset:
        return Dataset(id=new_id or self.id, tables=tables, joins=list(self.joins))
