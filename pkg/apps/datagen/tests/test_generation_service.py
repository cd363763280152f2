"""
Unit tests for the synthetic data generators.
"""

import numpy as np
from django.test import SimpleTestCase
from pydantic import ValidationError

from apps.corpus.domain.models import ColumnData
from apps.corpus.domain.services import validate

from ..domain.models import GenParams
from ..domain.services import (
    GenerationError,
    gen_corpus,
    gen_multi_table,
    gen_regime_corpus,
    gen_single_table,
    inject_column_correlation,
    sample_skewed_column,
)


def _modal_frequency(skew: float) -> int:
    column = sample_skewed_column(100_000, 100, skew, np.random.default_rng(11))
    return int(np.bincount(column.values).max())


class TestSampleSkewedColumn(SimpleTestCase):
    """Test cases for sample_skewed_column."""

    def test_zero_skew_is_uniform(self) -> None:
        """Test every value's frequency is within 20% of the uniform count."""
        column = sample_skewed_column(100_000, 100, 0.0, np.random.default_rng(0))
        counts = np.bincount(column.values, minlength=101)[1:]

        self.assertEqual(counts.shape[0], 100)
        self.assertTrue(np.all(np.abs(counts - 1000) <= 200))

    def test_higher_skew_concentrates_mass(self) -> None:
        """Test the modal value is more frequent at skew 0.9 than at 0.1."""
        self.assertGreater(_modal_frequency(0.9), _modal_frequency(0.1))

    def test_values_stay_in_domain(self) -> None:
        """Test skew up to the clamp keeps values within [1, d]."""
        for skew in (0.001, 0.5, 0.999, 1.0):
            column = sample_skewed_column(5000, 7, skew, np.random.default_rng(1))
            self.assertGreaterEqual(int(column.values.min()), 1)
            self.assertLessEqual(int(column.values.max()), 7)

    def test_zero_rows(self) -> None:
        """Test an empty column."""
        column = sample_skewed_column(0, 10, 0.5, np.random.default_rng(0))
        self.assertEqual(len(column), 0)

    def test_domain_too_small(self) -> None:
        """Test a one-value domain is rejected."""
        with self.assertRaises(GenerationError):
            sample_skewed_column(10, 1, 0.5, np.random.default_rng(0))


class TestInjectColumnCorrelation(SimpleTestCase):
    """Test cases for inject_column_correlation."""

    def setUp(self) -> None:
        """Set up two columns over disjoint domains."""
        rng = np.random.default_rng(3)
        self.a = ColumnData("a", rng.integers(1, 50, size=10_000))
        self.b = ColumnData("b", rng.integers(100, 150, size=10_000))

    def test_extremes(self) -> None:
        """Test r=0 keeps b and r=1 copies a."""
        rng = np.random.default_rng(0)
        kept = inject_column_correlation(self.a, self.b, 0.0, rng)
        copied = inject_column_correlation(self.a, self.b, 1.0, rng)

        self.assertTrue(np.array_equal(kept.values, self.b.values))
        self.assertTrue(np.array_equal(copied.values, self.a.values))

    def test_equality_fraction_matches_r(self) -> None:
        """Test the injected probability is recovered within 0.05."""
        for r in (0.25, 0.5, 0.75):
            out = inject_column_correlation(self.a, self.b, r, np.random.default_rng(5))
            measured = float(np.mean(out.values == self.a.values))
            self.assertLessEqual(abs(measured - r), 0.05, msg=f"r={r}")
            self.assertEqual(out.name, "b")

    def test_length_mismatch(self) -> None:
        """Test columns of different lengths are rejected."""
        with self.assertRaises(GenerationError):
            inject_column_correlation(
                self.a, ColumnData("c", [1, 2]), 0.5, np.random.default_rng(0)
            )


class TestGenSingleTable(SimpleTestCase):
    """Test cases for gen_single_table."""

    def test_single_column(self) -> None:
        """Test one column is left as sampled."""
        params = GenParams(cols_range=(1, 1), corr_range=(1.0, 1.0))
        table = gen_single_table(params, np.random.default_rng(0))
        self.assertEqual(table.column_names, ["c0"])
        self.assertIsNone(table.pk)

    def test_adjacent_pairs_are_chained(self) -> None:
        """Test r=1 on three columns makes both adjacent pairs equal."""
        params = GenParams(cols_range=(3, 3), corr_range=(1.0, 1.0))
        table = gen_single_table(params, np.random.default_rng(0))

        c0, c1, c2 = (c.values for c in table.columns)
        self.assertTrue(np.array_equal(c0, c1))
        self.assertTrue(np.array_equal(c1, c2))

    def test_uncorrelated_columns_differ(self) -> None:
        """Test r=0 leaves columns independent."""
        params = GenParams(
            rows_range=(1000, 1000),
            cols_range=(2, 2),
            skew_range=(0.0, 0.0),
            corr_range=(0.0, 0.0),
        )
        table = gen_single_table(params, np.random.default_rng(0))
        c0, c1 = (c.values for c in table.columns)
        self.assertLess(float(np.mean(c0 == c1)), 0.2)

    def test_deterministic(self) -> None:
        """Test a fixed seed gives a bitwise-identical table."""
        params = GenParams(cols_range=(2, 5))
        first = gen_single_table(params, np.random.default_rng(42))
        second = gen_single_table(params, np.random.default_rng(42))
        self.assertEqual(first, second)


class TestGenMultiTable(SimpleTestCase):
    """Test cases for gen_multi_table."""

    def _join_ratio(self, p: float, seed: int = 0) -> float:
        params = GenParams(
            n_tables=2,
            rows_range=(10_000, 10_000),
            cols_range=(1, 1),
            join_corr_range=(p, p),
        )
        d = gen_multi_table(params, np.random.default_rng(seed))
        (edge,) = d.joins
        fk = d.table(edge.fk_table).column(edge.fk_column)
        pk = d.table(edge.pk_table).column(edge.pk_column)
        return fk.n_distinct / pk.n_distinct

    def test_single_table_has_no_joins(self) -> None:
        """Test a one-table dataset gets a PK and no edges."""
        d = gen_multi_table(GenParams(n_tables=1), np.random.default_rng(0))
        self.assertEqual(d.joins, [])
        self.assertEqual(d.tables[0].pk, "id")

    def test_join_correlation_fidelity(self) -> None:
        """Test the FK share of the PK column matches p within 0.05."""
        for p in (0.2, 0.5, 0.54, 0.8):
            self.assertLessEqual(abs(self._join_ratio(p) - p), 0.05, msg=f"p={p}")

    def test_full_share_is_bounded(self) -> None:
        """Test p=1 never exceeds ratio 1."""
        self.assertLessEqual(self._join_ratio(1.0), 1.0)

    def test_referential_integrity(self) -> None:
        """Test generated multi-table datasets always validate."""
        params = GenParams(n_tables=5, n_main_tables=2, rows_range=(50, 300))
        for seed in range(10):
            d = gen_multi_table(params, np.random.default_rng(seed))
            self.assertEqual(validate(d), [], msg=f"seed={seed}")
            self.assertGreaterEqual(len(d.joins), 3)
            self.assertEqual(sum(t.pk is not None for t in d.tables), 2)

    def test_deterministic(self) -> None:
        """Test identical params and seed give identical datasets."""
        params = GenParams(n_tables=4, n_main_tables=2)
        self.assertEqual(
            gen_multi_table(params, np.random.default_rng(9)),
            gen_multi_table(params, np.random.default_rng(9)),
        )


class TestGenCorpus(SimpleTestCase):
    """Test cases for corpus-level generation."""

    def test_per_dataset_seeds(self) -> None:
        """Test dataset i is generated from seed ^ i."""
        params = GenParams(n_tables=2, seed=17, rows_range=(20, 40))
        corpus = gen_corpus(params, 3)

        self.assertEqual([d.id for d in corpus], ["ds0000", "ds0001", "ds0002"])
        expected = gen_multi_table(params, np.random.default_rng(17 ^ 1), "ds0001")
        self.assertEqual(corpus[1], expected)

    def test_parallel_matches_serial(self) -> None:
        """Test n_jobs does not change the output."""
        params = GenParams(n_tables=3, n_main_tables=2, rows_range=(20, 40))
        serial = gen_corpus(params, 4, n_jobs=1)
        self.assertEqual(serial, gen_corpus(params, 4, n_jobs=2))

    def test_regime_corpus_cycles_presets(self) -> None:
        """Test the regime corpus alternates single and multi-table datasets."""
        corpus = gen_regime_corpus(6, seed=1, rows_range=(30, 60))
        self.assertEqual([len(d.tables) for d in corpus], [1, 1, 4, 1, 1, 4])
        for d in corpus:
            self.assertEqual(validate(d), [])


class TestGenParams(SimpleTestCase):
    """Test cases for GenParams validation."""

    def test_rejects_unordered_ranges(self) -> None:
        """Test lo > hi is rejected."""
        with self.assertRaises(ValidationError):
            GenParams(rows_range=(10, 5))
        with self.assertRaises(ValidationError):
            GenParams(skew_range=(0.8, 0.2))

    def test_rejects_zero_join_correlation(self) -> None:
        """Test j_min must be positive."""
        with self.assertRaises(ValidationError):
            GenParams(join_corr_range=(0.0, 0.5))

    def test_rejects_too_many_main_tables(self) -> None:
        """Test n_main_tables <= n_tables."""
        with self.assertRaises(ValidationError):
            GenParams(n_tables=2, n_main_tables=3)

    def test_rejects_unknown_keys(self) -> None:
        """Test extra fields are forbidden."""
        with self.assertRaises(ValidationError):
            GenParams(rows=10)  # type: ignore[call-arg]
