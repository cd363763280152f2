"""
Feature extraction: column statistics, correlation blocks and join
correlations, assembled into per-dataset feature graphs.
"""

import logging
from collections.abc import Sequence

import numpy as np
from joblib import Parallel, delayed
from scipy import stats

from apps.corpus.domain.models import ColumnData, Dataset, Table

from ..models import STAT_NAMES, FeatureConfig, FeatureGraph

logger = logging.getLogger(__name__)

STAT_CLAMP = 10.0


class FeaturizationError(Exception):
    """Raised when a dataset does not fit the feature layout."""

    pass


def extract_column_stats(c: ColumnData) -> np.ndarray:
    """
    (skewness, distinct count, excess kurtosis, range, std, mean) of ``c``.

    Moments are population moments; skewness and kurtosis are clamped to
    [-10, 10] and are 0 for a constant column.

    Raises:
        FeaturizationError: If the column is empty
    """
    if len(c) == 0:
        raise FeaturizationError(f"Column '{c.name}' is empty")
    x = c.values.astype(np.float64)
    spread = float(x.max() - x.min())
    if spread == 0.0:
        skew = kurt = 0.0
    else:
        skew = float(np.clip(stats.skew(x), -STAT_CLAMP, STAT_CLAMP))
        kurt = float(np.clip(stats.kurtosis(x), -STAT_CLAMP, STAT_CLAMP))
    return np.array(
        [skew, float(c.n_distinct), kurt, spread, float(x.std()), float(x.mean())]
    )


def extract_correlation_block(
    t: Table, m: int, columns: Sequence[str] | None = None
) -> np.ndarray:
    """
    m x m matrix of |Pearson| correlations between ``columns`` of ``t``
    (all columns by default), zero padded.

    The diagonal is 1 for every present column; a pair involving a constant
    column is 0.

    Raises:
        FeaturizationError: If there are more than ``m`` columns
    """
    names = list(columns) if columns is not None else t.column_names
    if len(names) > m:
        raise FeaturizationError(
            f"Table '{t.name}' has {len(names)} columns, layout allows {m}"
        )
    block = np.zeros((m, m))
    present = np.arange(len(names))
    if t.n_rows >= 2 and names:
        x = np.column_stack([t.column(n).values for n in names]).astype(np.float64)
        live = np.flatnonzero(x.std(axis=0) > 0)
        if live.shape[0] >= 2:
            corr = np.abs(np.corrcoef(x[:, live], rowvar=False))
            block[np.ix_(live, live)] = np.clip(corr, 0.0, 1.0)
    block[present, present] = 1.0
    return block


def _vertex_features(d: Dataset, t: Table, m: int) -> np.ndarray:
    names = d.attribute_columns(t.name)
    if len(names) > m:
        raise FeaturizationError(
            f"Table {d.id}.{t.name} has {len(names)} attribute columns, "
            f"layout allows {m}"
        )
    column_stats = np.zeros((m, len(STAT_NAMES)))
    if t.n_rows:
        for i, name in enumerate(names):
            column_stats[i] = extract_column_stats(t.column(name))
    corr = extract_correlation_block(t, m, names)
    return np.concatenate(
        [column_stats.ravel(), corr.ravel(), [float(t.n_rows), float(len(names))]]
    )


def _join_correlations(d: Dataset) -> np.ndarray:
    n = len(d.tables)
    e = np.zeros((n, n))
    for edge in d.joins:
        pk_ndv = d.table(edge.pk_table).column(edge.pk_column).n_distinct
        if pk_ndv == 0:
            continue
        fk_ndv = d.table(edge.fk_table).column(edge.fk_column).n_distinct
        i, j = d.table_index(edge.pk_table), d.table_index(edge.fk_table)
        e[i, j] = max(e[i, j], min(fk_ndv / pk_ndv, 1.0))
    return e


def raw_feature_graph(
    d: Dataset, m_max_cols: int, n_max_tables: int | None = None
) -> FeatureGraph:
    """
    Unnormalized feature graph of ``d``.

    Raises:
        FeaturizationError: If a table has more than ``m_max_cols`` attribute
            columns or ``d`` has more than ``n_max_tables`` tables
    """
    if not d.tables:
        raise FeaturizationError(f"Dataset '{d.id}' has no tables")
    if n_max_tables is not None and len(d.tables) > n_max_tables:
        raise FeaturizationError(
            f"Dataset '{d.id}' has {len(d.tables)} tables, layout allows "
            f"{n_max_tables}"
        )
    v = np.vstack([_vertex_features(d, t, m_max_cols) for t in d.tables])
    return FeatureGraph(V=v, E=_join_correlations(d), dataset_id=d.id)


def normalize_vertices(v: np.ndarray, cfg: FeatureConfig) -> np.ndarray:
    """Min-max scale each dimension into [0, 1]; flat dimensions become 1.0."""
    lo = np.asarray(cfg.norm_min)
    span = np.asarray(cfg.norm_max) - lo
    live = span > 0
    out = np.ones_like(v)
    out[:, live] = np.clip((v[:, live] - lo[live]) / span[live], 0.0, 1.0)
    return out


def build_feature_graph(d: Dataset, cfg: FeatureConfig) -> FeatureGraph:
    """
    Normalized feature graph of ``d`` under ``cfg``.

    Raises:
        FeaturizationError: If ``d`` exceeds the column or table bounds
    """
    raw = raw_feature_graph(d, cfg.m_max_cols, cfg.n_max_tables)
    return FeatureGraph(V=normalize_vertices(raw.V, cfg), E=raw.E, dataset_id=d.id)


def fit_normalization(corpus: Sequence[Dataset], n_jobs: int = 1) -> FeatureConfig:
    """
    Derive layout bounds and per-dimension min/max from a training corpus.

    Raises:
        FeaturizationError: If the corpus is empty
    """
    if not corpus:
        raise FeaturizationError("Cannot fit feature normalization on an empty corpus")
    m = max(
        [len(d.attribute_columns(t.name)) for d in corpus for t in d.tables] + [1]
    )
    n_max = max(len(d.tables) for d in corpus)
    graphs = Parallel(n_jobs=n_jobs)(
        delayed(raw_feature_graph)(d, m) for d in corpus
    )
    v = np.vstack([g.V for g in graphs])
    logger.info(
        "Fitted feature normalization on %d datasets (m=%d, n_max_tables=%d)",
        len(corpus), m, n_max,
    )
    return FeatureConfig(
        m_max_cols=m,
        n_max_tables=n_max,
        norm_min=v.min(axis=0).tolist(),
        norm_max=v.max(axis=0).tolist(),
    )


def featurize_corpus(
    corpus: Sequence[Dataset], cfg: FeatureConfig, n_jobs: int = 1
) -> list[FeatureGraph]:
    """``build_feature_graph`` over a corpus, results in corpus order."""
    return list(
        Parallel(n_jobs=n_jobs)(delayed(build_feature_graph)(d, cfg) for d in corpus)
    )


def flatten_graph(g: FeatureGraph, n_max_tables: int) -> np.ndarray:
    """V and E zero padded to ``n_max_tables`` vertices, concatenated row-major."""
    if g.n_vertices > n_max_tables:
        raise FeaturizationError(
            f"Graph of {g.n_vertices} vertices exceeds {n_max_tables} tables"
        )
    p = g.padded(n_max_tables)
    return np.concatenate([p.V.ravel(), p.E.ravel()])


def drift_layout(d: Dataset, cfg: FeatureConfig) -> tuple[int, int]:
    """
    Smallest (attribute columns, tables) layout holding both the fitted
    layout of ``cfg`` and ``d``.
    """
    widest = max([len(d.attribute_columns(t.name)) for t in d.tables] + [0])
    return max(cfg.m_max_cols, widest), max(cfg.n_max_tables, len(d.tables))


def drift_vector(
    d: Dataset, cfg: FeatureConfig, layout: tuple[int, int] | None = None
) -> np.ndarray:
    """
    Unnormalized feature graph of ``d`` flattened in the fitted layout, or in
    ``layout`` given as (attribute columns, tables).

    Raises:
        FeaturizationError: If ``d`` does not fit the layout
    """
    m, n = layout or (cfg.m_max_cols, cfg.n_max_tables)
    return flatten_graph(raw_feature_graph(d, m, n), n)


def widen_drift_vectors(
    vectors: np.ndarray, cfg: FeatureConfig, layout: tuple[int, int]
) -> np.ndarray:
    """
    Re-lay drift vectors of the fitted layout into the wider ``layout``, as if
    each dataset had been flattened there. Returns ``vectors`` itself when the
    layouts agree.

    Raises:
        FeaturizationError: If ``layout`` is narrower than the fitted one
    """
    m0, n0 = cfg.m_max_cols, cfg.n_max_tables
    m, n = layout
    if m < m0 or n < n0:
        raise FeaturizationError(
            f"Cannot narrow the drift layout ({m0}, {n0}) to ({m}, {n})"
        )
    if (m, n) == (m0, n0):
        return vectors
    k = cfg.k_features
    rows = vectors.shape[0]
    v = vectors[:, : n0 * cfg.feature_dim].reshape(rows, n0, cfg.feature_dim)
    e = vectors[:, n0 * cfg.feature_dim :].reshape(rows, n0, n0)

    column_stats = v[:, :, : m0 * k].reshape(rows, n0, m0, k)
    corr = v[:, :, m0 * k : m0 * (k + m0)].reshape(rows, n0, m0, m0)
    column_stats = np.pad(column_stats, ((0, 0), (0, 0), (0, m - m0), (0, 0)))
    corr = np.pad(corr, ((0, 0), (0, 0), (0, m - m0), (0, m - m0)))
    wide = np.concatenate(
        [
            column_stats.reshape(rows, n0, m * k),
            corr.reshape(rows, n0, m * m),
            v[:, :, m0 * (k + m0) :],
        ],
        axis=2,
    )
    wide = np.pad(wide, ((0, 0), (0, n - n0), (0, 0)))
    e = np.pad(e, ((0, 0), (0, n - n0), (0, n - n0)))
    return np.concatenate([wide.reshape(rows, -1), e.reshape(rows, -1)], axis=1)
