"""
Synthetic dataset generation.

Columns are drawn from a Pareto-shaped density, adjacent columns are made equal
with a drawn probability, and PK-FK joins are populated from a sampled share of
the referenced PK column.
"""

import logging
import math

import numpy as np
from joblib import Parallel, delayed

from apps.corpus.domain.models import ColumnData, Dataset, JoinEdge, Table

from ..models import REGIME_PRESETS, GenParams

logger = logging.getLogger(__name__)

GRID_POINTS = 4096
SKEW_CLAMP = 0.999
PK_COLUMN = "id"

_GRID = np.linspace(0.0, 1.0, GRID_POINTS)


class GenerationError(Exception):
    """Raised when generation inputs are inconsistent."""

    pass


def _skew_cdf(skew: float) -> np.ndarray:
    """
    Normalized CDF of the skew density on the unit grid.

    The density is (1 + x(s-1))^(-1 - 1/(1-s)) with s = 1 - skew, so that
    larger ``skew`` puts more mass on the top of the domain. Evaluated in log
    space to stay finite for skew close to 0.
    """
    s = 1.0 - min(skew, SKEW_CLAMP)
    exponent = -1.0 - 1.0 / (1.0 - s)
    log_pdf = exponent * np.log1p(_GRID * (s - 1.0))
    pdf = np.exp(log_pdf - log_pdf.max())
    steps = 0.5 * (pdf[1:] + pdf[:-1]) * np.diff(_GRID)
    cdf = np.concatenate(([0.0], np.cumsum(steps)))
    return cdf / cdf[-1]


def sample_skewed_column(
    rows: int,
    domain: int,
    skew: float,
    rng: np.random.Generator,
    name: str = "c0",
) -> ColumnData:
    """
    Draw ``rows`` values in [1, domain] by inverse-CDF sampling.

    Args:
        rows: Number of values
        domain: Domain size d; values land in [1, d]
        skew: 0 gives the exact uniform distribution; values >= 0.999 are
            clamped to 0.999
        rng: Random generator

    Raises:
        GenerationError: If domain < 2 or rows < 0
    """
    if domain < 2:
        raise GenerationError(f"Domain size must be >= 2, got {domain}")
    if rows < 0:
        raise GenerationError(f"Row count must be >= 0, got {rows}")
    if not 0.0 <= skew <= 1.0:
        raise GenerationError(f"Skew must lie in [0, 1], got {skew}")

    if skew == 0.0:
        return ColumnData(name, rng.integers(1, domain + 1, size=rows))

    u = rng.random(rows)
    x = np.interp(u, _skew_cdf(skew), _GRID)
    values = np.clip(1 + np.floor(x * domain).astype(np.int64), 1, domain)
    return ColumnData(name, values)


def inject_column_correlation(
    a: ColumnData, b: ColumnData, r: float, rng: np.random.Generator
) -> ColumnData:
    """
    Return ``b`` with each row replaced by ``a``'s value with probability ``r``.

    Raises:
        GenerationError: If the columns differ in length
    """
    if len(a) != len(b):
        raise GenerationError(
            f"Cannot correlate '{a.name}' ({len(a)} rows) with '{b.name}' "
            f"({len(b)} rows)"
        )
    mask = rng.random(len(b)) < r
    return ColumnData(b.name, np.where(mask, a.values, b.values))


def gen_single_table(
    params: GenParams, rng: np.random.Generator, name: str = "t0"
) -> Table:
    """
    Generate one table of skewed, chain-correlated attribute columns.

    Each column draws its own skew; each adjacent pair (i, i+1) draws its own
    equality probability, applied left to right.
    """
    rows = int(rng.integers(params.rows_range[0], params.rows_range[1] + 1))
    n_cols = int(rng.integers(params.cols_range[0], params.cols_range[1] + 1))

    columns = [
        sample_skewed_column(
            rows, params.domain_size, float(rng.uniform(*params.skew_range)), rng,
            name=f"c{i}",
        )
        for i in range(n_cols)
    ]
    for i in range(n_cols - 1):
        r = float(rng.uniform(*params.corr_range))
        columns[i + 1] = inject_column_correlation(columns[i], columns[i + 1], r, rng)
    return Table(name=name, columns=columns)


def _fill_foreign_key(
    pk_values: np.ndarray, rows: int, p: float, rng: np.random.Generator
) -> np.ndarray:
    # Every value of the sampled share appears at least once when rows allow,
    # so distinct(FK)/distinct(PK) equals ceil(p|PK|)/|PK|.
    size = min(max(1, math.ceil(p * pk_values.shape[0])), pk_values.shape[0])
    subset = rng.choice(pk_values, size=size, replace=False)
    if rows < size:
        return rng.choice(subset, size=rows, replace=True)
    extra = rng.choice(subset, size=rows - size, replace=True)
    return rng.permutation(np.concatenate([subset, extra]))


def gen_multi_table(
    params: GenParams, rng: np.random.Generator, dataset_id: str = "ds0000"
) -> Dataset:
    """
    Generate ``params.n_tables`` tables and connect them by PK-FK joins.

    Main tables are the first ``n_main_tables`` entries of a seeded shuffle and
    get a sequential ``id`` PK. Every other table references one uniformly
    chosen main table; each main table after the first references an earlier
    one with probability 0.5. The FK share p is drawn from
    ``params.join_corr_range`` per edge.
    """
    tables = [
        gen_single_table(params, rng, name=f"t{i}") for i in range(params.n_tables)
    ]

    order = [int(i) for i in rng.permutation(params.n_tables)]
    mains = order[: params.n_main_tables]
    for idx in mains:
        t = tables[idx]
        pk = ColumnData(PK_COLUMN, np.arange(1, t.n_rows + 1, dtype=np.int64))
        tables[idx] = Table(t.name, [pk, *t.columns], pk=PK_COLUMN)

    references: list[tuple[int, int]] = []
    for pos, idx in enumerate(mains[1:], start=1):
        if rng.random() < 0.5:
            references.append((idx, mains[int(rng.integers(0, pos))]))
    for idx in order[params.n_main_tables :]:
        references.append((idx, mains[int(rng.integers(0, len(mains)))]))

    joins: list[JoinEdge] = []
    for fk_idx, pk_idx in references:
        pk_table, fk_table = tables[pk_idx], tables[fk_idx]
        p = float(rng.uniform(*params.join_corr_range))
        fk_name = f"{pk_table.name}_id"
        fk_values = _fill_foreign_key(
            pk_table.column(PK_COLUMN).values, fk_table.n_rows, p, rng
        )
        tables[fk_idx] = Table(
            fk_table.name,
            [*fk_table.columns, ColumnData(fk_name, fk_values)],
            pk=fk_table.pk,
        )
        joins.append(JoinEdge(pk_table.name, PK_COLUMN, fk_table.name, fk_name))
        logger.debug(
            "%s: %s.%s -> %s.%s with p=%.3f",
            dataset_id, fk_table.name, fk_name, pk_table.name, PK_COLUMN, p,
        )

    return Dataset(id=dataset_id, tables=tables, joins=joins)


def _gen_indexed(params: GenParams, index: int, prefix: str) -> Dataset:
    rng = np.random.default_rng(params.seed ^ index)
    return gen_multi_table(params, rng, dataset_id=f"{prefix}{index:04d}")


def gen_corpus(
    params: GenParams, n: int, prefix: str = "ds", n_jobs: int = 1
) -> list[Dataset]:
    """
    Generate ``n`` datasets, dataset ``i`` seeded with ``params.seed ^ i``.

    Results come back in index order regardless of ``n_jobs``.
    """
    if n < 0:
        raise GenerationError(f"Corpus size must be >= 0, got {n}")
    datasets = Parallel(n_jobs=n_jobs)(
        delayed(_gen_indexed)(params, i, prefix) for i in range(n)
    )
    logger.info("Generated %d datasets (seed=%d)", n, params.seed)
    return list(datasets)


def gen_regime_corpus(
    n: int,
    seed: int,
    rows_range: tuple[int, int] = (500, 1500),
    prefix: str = "ds",
    n_jobs: int = 1,
) -> list[Dataset]:
    """
    Generate ``n`` datasets cycling round-robin through ``REGIME_PRESETS``.

    Used to build a corpus where different estimators win on different
    datasets.
    """
    if n < 0:
        raise GenerationError(f"Corpus size must be >= 0, got {n}")
    names = list(REGIME_PRESETS)
    params = [
        REGIME_PRESETS[names[i % len(names)]].model_copy(
            update={"seed": seed, "rows_range": rows_range}
        )
        for i in range(n)
    ]
    datasets = Parallel(n_jobs=n_jobs)(
        delayed(_gen_indexed)(params[i], i, prefix) for i in range(n)
    )
    logger.info("Generated %d regime datasets over %s", n, ", ".join(names))
    return list(datasets)


def regime_of(index: int) -> str:
    """Name of the regime ``gen_regime_corpus`` used for dataset ``index``."""
    names = list(REGIME_PRESETS)
    return names[index % len(names)]
