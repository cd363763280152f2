"""
Ground-truth cardinalities and the Q-error metric.
"""

import logging

import numpy as np
import pandas as pd

from apps.corpus.domain.models import Dataset

from ..models import JoinPredicate, Query

logger = logging.getLogger(__name__)


class WorkloadError(Exception):
    """Raised when a query does not fit its dataset or a metric is undefined."""

    pass


def _filter_mask(d: Dataset, q: Query, table: str) -> np.ndarray:
    try:
        t = d.table(table)
    except KeyError as e:
        raise WorkloadError(str(e)) from e
    mask = np.ones(t.n_rows, dtype=bool)
    for r in q.range_predicates:
        if r.table != table:
            continue
        if not t.has_column(r.column):
            raise WorkloadError(f"Filter column {table}.{r.column} does not exist")
        values = t.column(r.column).values
        mask &= (values >= r.lo) & (values <= r.hi)
    return mask


def _key_values(d: Dataset, table: str, column: str) -> np.ndarray:
    t = d.table(table)
    if not t.has_column(column):
        raise WorkloadError(f"Join column {table}.{column} does not exist")
    return t.column(column).values


def _sides(j: JoinPredicate, table: str) -> tuple[str, str, str]:
    """(this column, other table, other column) seen from ``table``."""
    if j.pk_table == table:
        return j.pk_column, j.fk_table, j.fk_column
    return j.fk_column, j.pk_table, j.pk_column


def exact_card(d: Dataset, q: Query) -> int:
    """
    Exact result size of ``q`` over ``d``.

    Each table is filtered, then the join tree is folded bottom-up: a child's
    per-row match counts are hash-aggregated on its join key and looked up by
    the parent's key, so no intermediate join result is materialized.

    Raises:
        WorkloadError: If the query names tables or columns absent from ``d``
    """
    masks = {t: _filter_mask(d, q, t) for t in q.tables}

    def fold(table: str, parent: str | None) -> np.ndarray:
        weight = masks[table].astype(np.int64)
        for j in q.join_predicates:
            if table not in (j.pk_table, j.fk_table):
                continue
            own_col, child, child_col = _sides(j, table)
            if child == parent:
                continue
            child_weight = fold(child, table)
            matches = (
                pd.Series(child_weight)
                .groupby(_key_values(d, child, child_col))
                .sum()
            )
            own_keys = _key_values(d, table, own_col)
            weight = weight * matches.reindex(own_keys, fill_value=0).to_numpy(
                dtype=np.int64
            )
        return weight

    return int(fold(q.tables[0], None).sum())


def nested_loop_card(d: Dataset, q: Query) -> int:
    """
    Recount ``q`` by binding one table at a time and checking every predicate.

    Quadratic in the data; meant for datasets of at most a few thousand rows.
    """
    order = [q.tables[0]]
    while len(order) < len(q.tables):
        for j in q.join_predicates:
            if (j.pk_table in order) != (j.fk_table in order):
                order.append(j.fk_table if j.pk_table in order else j.pk_table)
                break

    rows = {
        t: [int(i) for i in np.flatnonzero(_filter_mask(d, q, t))] for t in q.tables
    }
    columns = {
        (t, c.name): c.values.tolist() for t in q.tables for c in d.table(t).columns
    }

    partial: list[dict[str, int]] = [{}]
    for table in order:
        extended: list[dict[str, int]] = []
        for binding in partial:
            for i in rows[table]:
                candidate = {**binding, table: i}
                if all(
                    columns[(j.pk_table, j.pk_column)][candidate[j.pk_table]]
                    == columns[(j.fk_table, j.fk_column)][candidate[j.fk_table]]
                    for j in q.join_predicates
                    if j.pk_table in candidate and j.fk_table in candidate
                ):
                    extended.append(candidate)
        partial = extended
    return len(partial)


def qerror(est: float, truth: int) -> float:
    """
    Q-error ``max(est, t) / min(est, t)`` with ``t = max(truth, 1)``.

    Raises:
        WorkloadError: If ``est`` is not positive
    """
    if not est > 0:
        raise WorkloadError(f"Estimate must be positive, got {est}")
    t = float(max(truth, 1))
    return max(est, t) / min(est, t)
