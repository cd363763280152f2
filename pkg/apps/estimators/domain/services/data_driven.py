"""
Data-driven estimators: trained on the dataset alone.

- hist-avi: per-column equi-depth histograms, attribute value independence,
  distinct-count containment for joins
- sample-eval: Bernoulli row sample per table, evaluated exactly and scaled up
- chain-bayes: binned marginal of the first column and conditional 2D
  histograms between adjacent columns, multiplied along the chain
"""

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from apps.corpus.domain.models import Dataset, Table
from apps.workload.domain.models import Query
from apps.workload.domain.services import exact_card

from .registry import CardEstimator, EstimatorError, register_estimator

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EquiDepthHistogram:
    """Buckets of whole distinct values holding roughly equal row counts."""

    lows: np.ndarray
    highs: np.ndarray
    counts: np.ndarray
    total: int

    @classmethod
    def build(cls, values: np.ndarray, buckets: int) -> "EquiDepthHistogram":
        n = int(values.shape[0])
        if n == 0:
            empty = np.zeros(0, dtype=np.int64)
            return cls(empty, empty, empty, 0)
        uniq, cnt = np.unique(values, return_counts=True)
        start = np.cumsum(cnt) - cnt
        bucket = np.minimum(start * buckets // n, buckets - 1)
        _, first = np.unique(bucket, return_index=True)
        last = np.append(first[1:], uniq.shape[0]) - 1
        return cls(
            lows=uniq[first],
            highs=uniq[last],
            counts=np.add.reduceat(cnt, first),
            total=n,
        )

    def __len__(self) -> int:
        return int(self.counts.shape[0])

    def selectivity(self, lo: int, hi: int) -> float:
        """Share of rows in [lo, hi], spreading each bucket over its span."""
        if self.total == 0:
            return 0.0
        overlap = np.minimum(hi, self.highs) - np.maximum(lo, self.lows) + 1
        fraction = np.clip(overlap, 0, None) / (self.highs - self.lows + 1)
        return float(np.dot(self.counts, fraction) / self.total)


def _distinct_counts(d: Dataset) -> dict[tuple[str, str], int]:
    return {(t.name, c.name): c.n_distinct for t in d.tables for c in t.columns}


def _join_divisor(q: Query, ndv: dict[tuple[str, str], int]) -> float:
    divisor = 1.0
    for j in q.join_predicates:
        pk_ndv = ndv[(j.pk_table, j.pk_column)]
        fk_ndv = ndv[(j.fk_table, j.fk_column)]
        divisor *= max(pk_ndv, fk_ndv, 1)
    return divisor


@register_estimator
class HistAvi(CardEstimator):
    kind = "hist-avi"
    family = "data_driven"
    defaults = {"buckets": 32}

    def _fit(self, d: Dataset, train: Sequence[Query]) -> None:
        buckets = int(self.hp["buckets"])
        if buckets < 1:
            raise EstimatorError(f"hist-avi needs at least one bucket, got {buckets}")
        self.rows = {t.name: t.n_rows for t in d.tables}
        self.histograms = {
            (t.name, c.name): EquiDepthHistogram.build(c.values, buckets)
            for t in d.tables
            for c in t.columns
        }
        self.ndv = _distinct_counts(d)

    def _estimate(self, q: Query) -> tuple[float, int]:
        card = math.prod(float(self.rows[t]) for t in q.tables)
        cost = len(q.tables)
        for r in q.range_predicates:
            h = self.histograms[(r.table, r.column)]
            card *= h.selectivity(r.lo, r.hi)
            cost += len(h)
        cost += 2 * len(q.join_predicates)
        return card / _join_divisor(q, self.ndv), cost


@register_estimator
class SampleEval(CardEstimator):
    kind = "sample-eval"
    family = "data_driven"
    defaults = {"rate": 0.05, "seed": 0}

    def _fit(self, d: Dataset, train: Sequence[Query]) -> None:
        self.rate = float(self.hp["rate"])
        if not 0.0 < self.rate <= 1.0:
            raise EstimatorError(
                f"sample-eval rate must lie in (0, 1], got {self.rate}"
            )
        rng = np.random.default_rng(int(self.hp["seed"]))
        self.sample = d.replace_tables(
            [t.take(rng.random(t.n_rows) < self.rate) for t in d.tables]
        )

    def _estimate(self, q: Query) -> tuple[float, int]:
        cost = sum(self.sample.table(t).n_rows for t in q.tables)
        return exact_card(self.sample, q) / self.rate ** len(q.tables), cost


@dataclass(frozen=True)
class _Binning:
    """Equal-width integer bins over [lo, lo + span)."""

    lo: int
    span: int
    width: int

    @classmethod
    def fit(cls, values: np.ndarray, max_bins: int) -> "_Binning":
        lo = int(values.min())
        span = int(values.max()) - lo + 1
        return cls(lo=lo, span=span, width=math.ceil(span / max_bins))

    @property
    def n_bins(self) -> int:
        return math.ceil(self.span / self.width)

    def assign(self, values: np.ndarray) -> np.ndarray:
        return (values - self.lo) // self.width

    def coverage(self, lo: int, hi: int) -> np.ndarray:
        """Fraction of each bin's integer span inside [lo, hi]."""
        starts = self.lo + self.width * np.arange(self.n_bins)
        ends = np.minimum(starts + self.width, self.lo + self.span) - 1
        overlap = np.minimum(hi, ends) - np.maximum(lo, starts) + 1
        return np.clip(overlap, 0, None) / (ends - starts + 1)


@dataclass(frozen=True)
class _Chain:
    columns: list[str]
    binnings: list[_Binning]
    marginal: np.ndarray
    transitions: list[np.ndarray]

    @classmethod
    def fit(cls, t: Table, order: list[str], max_bins: int) -> "_Chain":
        binnings = [_Binning.fit(t.column(c).values, max_bins) for c in order]
        codes = [
            b.assign(t.column(c).values) for b, c in zip(binnings, order, strict=True)
        ]
        marginal = np.bincount(codes[0], minlength=binnings[0].n_bins) / t.n_rows
        transitions: list[np.ndarray] = []
        for i in range(1, len(order)):
            joint = np.zeros((binnings[i - 1].n_bins, binnings[i].n_bins))
            np.add.at(joint, (codes[i - 1], codes[i]), 1.0)
            totals = joint.sum(axis=1, keepdims=True)
            transitions.append(
                np.divide(joint, totals, out=np.zeros_like(joint), where=totals > 0)
            )
        return cls(order, binnings, marginal, transitions)

    def selectivity(self, ranges: dict[str, tuple[int, int]]) -> tuple[float, int]:
        """Forward pass over the chain, stopping after the last filtered column."""
        positions = [self.columns.index(c) for c in ranges]
        stop = max(positions, default=0)

        def weight(i: int) -> np.ndarray:
            column = self.columns[i]
            if column not in ranges:
                return np.ones(self.binnings[i].n_bins)
            return self.binnings[i].coverage(*ranges[column])

        alpha = self.marginal * weight(0)
        cost = alpha.shape[0]
        for i in range(1, stop + 1):
            alpha = (alpha @ self.transitions[i - 1]) * weight(i)
            cost += self.transitions[i - 1].size
        return float(alpha.sum()), cost


@register_estimator
class ChainBayes(CardEstimator):
    kind = "chain-bayes"
    family = "data_driven"
    defaults = {"bins": 16}

    def _fit(self, d: Dataset, train: Sequence[Query]) -> None:
        bins = int(self.hp["bins"])
        if bins < 1:
            raise EstimatorError(f"chain-bayes needs at least one bin, got {bins}")
        self.rows = {t.name: t.n_rows for t in d.tables}
        self.chains: dict[str, _Chain] = {}
        for t in d.tables:
            if t.n_rows == 0 or not t.columns:
                continue
            attributes = d.attribute_columns(t.name)
            keys = [c for c in t.column_names if c not in attributes]
            self.chains[t.name] = _Chain.fit(t, attributes + keys, bins)
        self.ndv = _distinct_counts(d)

    def _estimate(self, q: Query) -> tuple[float, int]:
        card = 1.0
        cost = 0
        for table in q.tables:
            chain = self.chains.get(table)
            if chain is None:
                return 0.0, cost + 1
            ranges: dict[str, tuple[int, int]] = {}
            for r in q.range_predicates:
                if r.table != table:
                    continue
                lo, hi = ranges.get(r.column, (r.lo, r.hi))
                ranges[r.column] = (max(lo, r.lo), min(hi, r.hi))
            sel, steps = chain.selectivity(ranges)
            card *= self.rows[table] * sel
            cost += steps
        cost += 2 * len(q.join_predicates)
        return card / _join_divisor(q, self.ndv), cost
