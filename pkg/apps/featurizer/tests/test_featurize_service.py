"""
Unit tests for feature extraction and feature graph assembly.
"""

import math

import numpy as np
from django.test import SimpleTestCase

from apps.corpus.domain.models import ColumnData, Dataset, Table
from apps.corpus.tests.factories import random_table, star_dataset
from apps.datagen.domain.models import GenParams
from apps.datagen.domain.services import gen_multi_table, inject_column_correlation

from ..domain.models import FeatureConfig, feature_names
from ..domain.services import (
    FeaturizationError,
    build_feature_graph,
    drift_layout,
    drift_vector,
    extract_column_stats,
    extract_correlation_block,
    featurize_corpus,
    fit_normalization,
    flatten_graph,
    raw_feature_graph,
    widen_drift_vectors,
)


def _single(values: list[int] | np.ndarray, name: str = "c0") -> ColumnData:
    return ColumnData(name, np.asarray(values))


def _scaled(d: Dataset, factor: int) -> Dataset:
    tables = [
        Table(t.name, [ColumnData(c.name, c.values * factor) for c in t.columns])
        for t in d.tables
    ]
    return d.replace_tables(tables)


def _one_table(n_cols: int = 2, seed: int = 0) -> Dataset:
    t = random_table("t", 50, n_cols, 10, np.random.default_rng(seed))
    return Dataset(id=f"one{n_cols}", tables=[t])


def _two_table(p: float, rows: int = 10_000, seed: int = 0) -> Dataset:
    params = GenParams(
        n_tables=2,
        rows_range=(rows, rows),
        join_corr_range=(p, p),
        seed=seed,
    )
    return gen_multi_table(params, np.random.default_rng(seed))


class TestExtractColumnStats(SimpleTestCase):
    """Test cases for extract_column_stats."""

    def test_constant_column(self) -> None:
        """Test the zero-variance rule."""
        np.testing.assert_array_equal(
            extract_column_stats(_single([7, 7, 7])), [0.0, 1.0, 0.0, 0.0, 0.0, 7.0]
        )

    def test_hand_computed_moments(self) -> None:
        """Test values {1, 2, 3}."""
        skew, ndv, _, spread, std, mean = extract_column_stats(_single([1, 2, 3]))
        self.assertAlmostEqual(skew, 0.0)
        self.assertEqual(ndv, 3.0)
        self.assertEqual(spread, 2.0)
        self.assertAlmostEqual(std, math.sqrt(2 / 3))
        self.assertAlmostEqual(mean, 2.0)

    def test_symmetric_bimodal(self) -> None:
        """Test a symmetric column has zero skewness."""
        self.assertAlmostEqual(extract_column_stats(_single([1, 1, 9, 9]))[0], 0.0)

    def test_heavy_tail_is_clamped(self) -> None:
        """Test skewness and kurtosis stay within [-10, 10]."""
        values = np.ones(10_000, dtype=np.int64)
        values[0] = 1000
        skew, _, kurt, *_ = extract_column_stats(_single(values))
        self.assertEqual(skew, 10.0)
        self.assertEqual(kurt, 10.0)

    def test_empty_column(self) -> None:
        """Test an empty column is rejected."""
        with self.assertRaises(FeaturizationError):
            extract_column_stats(_single([]))


class TestExtractCorrelationBlock(SimpleTestCase):
    """Test cases for extract_correlation_block."""

    def test_identical_columns(self) -> None:
        """Test identical columns correlate fully."""
        values = np.random.default_rng(0).integers(1, 50, size=500)
        t = Table("t", [_single(values, "a"), _single(values, "b")])
        block = extract_correlation_block(t, 2)
        self.assertAlmostEqual(block[0, 1], 1.0)
        self.assertAlmostEqual(block[1, 0], 1.0)

    def test_independent_columns(self) -> None:
        """Test independent uniform columns are nearly uncorrelated."""
        t = random_table("t", 10_000, 2, 100, np.random.default_rng(1))
        self.assertLessEqual(extract_correlation_block(t, 2)[0, 1], 0.05)

    def test_padding(self) -> None:
        """Test a 2-column table in a 4-column layout has 12 zero entries."""
        t = random_table("t", 100, 2, 10, np.random.default_rng(2))
        block = extract_correlation_block(t, 4)

        self.assertEqual(block.shape, (4, 4))
        self.assertEqual(np.count_nonzero(block[2:, :]), 0)
        self.assertEqual(np.count_nonzero(block[:, 2:]), 0)
        np.testing.assert_array_equal(np.diag(block)[:2], [1.0, 1.0])

    def test_constant_column_pairs_are_zero(self) -> None:
        """Test pairs with a constant column."""
        t = Table("t", [_single([1, 2, 3, 4], "a"), _single([5, 5, 5, 5], "b")])
        block = extract_correlation_block(t, 2)
        self.assertEqual(block[0, 1], 0.0)
        self.assertEqual(block[1, 1], 1.0)

    def test_equality_correlation_is_recovered(self) -> None:
        """Test the extracted value tracks the injected equality probability."""
        rng = np.random.default_rng(3)
        base = random_table("t", 10_000, 2, 100, rng)
        extracted = []
        for r in (0.25, 0.5, 0.75):
            b = inject_column_correlation(base.column("c0"), base.column("c1"), r, rng)
            value = extract_correlation_block(Table("t", [base.column("c0"), b]), 2)
            extracted.append(value[0, 1])
            self.assertLessEqual(abs(value[0, 1] - r), 0.05)
        self.assertEqual(extracted, sorted(extracted))

    def test_too_many_columns(self) -> None:
        """Test the layout bound."""
        t = random_table("t", 10, 3, 5, np.random.default_rng(4))
        with self.assertRaises(FeaturizationError):
            extract_correlation_block(t, 2)


class TestBuildFeatureGraph(SimpleTestCase):
    """Test cases for build_feature_graph and fit_normalization."""

    def test_vertex_shape(self) -> None:
        """Test 5 tables of 4 columns give V of shape [5, 42]."""
        params = GenParams(
            n_tables=5, n_main_tables=2, rows_range=(100, 200), cols_range=(4, 4)
        )
        d = gen_multi_table(params, np.random.default_rng(0))
        cfg = fit_normalization([d])
        g = build_feature_graph(d, cfg)

        self.assertEqual(cfg.m_max_cols, 4)
        self.assertEqual(g.V.shape, (5, 42))
        self.assertEqual(g.E.shape, (5, 5))
        self.assertEqual(len(feature_names(4)), 42)

    def test_join_correlation_is_recovered(self) -> None:
        """Test E carries the FK share of PK distinct values."""
        for p in (0.2, 0.5, 0.54, 0.8):
            d = _two_table(p)
            edge = d.joins[0]
            e = raw_feature_graph(d, 4).E
            i, j = d.table_index(edge.pk_table), d.table_index(edge.fk_table)

            self.assertLessEqual(abs(e[i, j] - p), 0.05)
            self.assertEqual(e[j, i], 0.0)

    def test_single_table_has_no_edges(self) -> None:
        """Test E is the 1x1 zero matrix."""
        d = _one_table()
        g = raw_feature_graph(d, 2)
        np.testing.assert_array_equal(g.E, np.zeros((1, 1)))

    def test_single_dataset_corpus_normalizes_to_one(self) -> None:
        """Test min == max dimensions map to 1.0."""
        d = _one_table()
        g = build_feature_graph(d, fit_normalization([d]))
        np.testing.assert_array_equal(g.V, np.ones_like(g.V))

    def test_scaling_invariance(self) -> None:
        """Test corpora differing by a value scaling normalize alike."""
        rng = np.random.default_rng(5)
        corpus = [
            Dataset(id=f"d{i}", tables=[random_table("t", 200, 3, 40 + i, rng)])
            for i in range(4)
        ]
        scaled = [_scaled(d, 3) for d in corpus]
        original = build_feature_graph(corpus[1], fit_normalization(corpus))
        rescaled = build_feature_graph(scaled[1], fit_normalization(scaled))
        np.testing.assert_allclose(original.V, rescaled.V, atol=1e-9)

    def test_out_of_range_is_clamped(self) -> None:
        """Test a dataset larger than the corpus stays within [0, 1]."""
        rng = np.random.default_rng(6)
        corpus = [
            Dataset(id=f"d{i}", tables=[random_table("t", 100 + i, 2, 10, rng)])
            for i in range(3)
        ]
        big = Dataset(id="big", tables=[random_table("t", 5000, 2, 1000, rng)])
        g = build_feature_graph(big, fit_normalization(corpus))
        self.assertTrue(np.all((g.V >= 0.0) & (g.V <= 1.0)))

    def test_bounds_are_enforced(self) -> None:
        """Test too many tables or columns for the fitted layout."""
        d = _one_table()
        cfg = fit_normalization([d])
        with self.assertRaises(FeaturizationError):
            build_feature_graph(star_dataset(), cfg)
        wide = _one_table(n_cols=3)
        with self.assertRaises(FeaturizationError):
            build_feature_graph(wide, cfg)

    def test_empty_corpus(self) -> None:
        """Test fitting needs at least one dataset."""
        with self.assertRaises(FeaturizationError):
            fit_normalization([])

    def test_deterministic_and_parallel_safe(self) -> None:
        """Test repeated and parallel featurization agree."""
        corpus = [star_dataset(seed=s, dataset_id=f"s{s}") for s in range(3)]
        cfg = fit_normalization(corpus)
        serial = featurize_corpus(corpus, cfg)
        parallel = featurize_corpus(corpus, cfg, n_jobs=2)
        for a, b in zip(serial, parallel, strict=True):
            np.testing.assert_array_equal(a.V, b.V)
            np.testing.assert_array_equal(a.E, b.E)


class TestFlattening(SimpleTestCase):
    """Test cases for flatten_graph and drift_vector."""

    def test_flatten_pads(self) -> None:
        """Test padding to the table bound."""
        d = star_dataset(n_children=1)
        g = raw_feature_graph(d, 2)
        flat = flatten_graph(g, 4)

        self.assertEqual(flat.shape, (4 * g.feature_dim + 16,))
        np.testing.assert_array_equal(flat[: g.V.size], g.V.ravel())
        self.assertEqual(np.count_nonzero(flat[g.V.size : 4 * g.feature_dim]), 0)
        with self.assertRaises(FeaturizationError):
            flatten_graph(g, 1)

    def test_drift_vector_is_unnormalized(self) -> None:
        """Test raw row counts survive in the drift space."""
        d = star_dataset()
        cfg = fit_normalization([d])
        vector = drift_vector(d, cfg)

        self.assertIn(50.0, vector)
        self.assertEqual(vector.shape, (3 * cfg.feature_dim + 9,))

    def test_drift_layout_grows(self) -> None:
        """Test the layout covers a dataset wider and longer than the corpus."""
        cfg = fit_normalization([star_dataset(n_children=1)])
        wide = star_dataset(n_children=3, n_cols=4)

        self.assertEqual(drift_layout(wide, cfg), (4, 4))
        self.assertEqual(drift_layout(star_dataset(n_children=1), cfg), (2, 2))

    def test_widened_vector_matches_direct(self) -> None:
        """Test widening a stored vector equals featurizing in the wide layout."""
        d = star_dataset(n_children=1, seed=4)
        cfg = fit_normalization([d])
        stored = drift_vector(d, cfg)[np.newaxis, :]

        widened = widen_drift_vectors(stored, cfg, (5, 3))

        np.testing.assert_array_equal(widened[0], drift_vector(d, cfg, (5, 3)))
        self.assertIs(widen_drift_vectors(stored, cfg, (2, 2)), stored)
        with self.assertRaises(FeaturizationError):
            widen_drift_vectors(stored, cfg, (1, 2))


class TestFeatureConfig(SimpleTestCase):
    """Test cases for FeatureConfig validation."""

    def test_stats_must_match_layout(self) -> None:
        """Test norm vectors of the wrong length are rejected."""
        with self.assertRaises(ValueError):
            FeatureConfig(m_max_cols=2, n_max_tables=1, norm_min=[0.0], norm_max=[1.0])
