"""
Unit tests for the sampling strategy.
"""

import numpy as np
from django.test import SimpleTestCase

from apps.corpus.domain.models import ColumnData, Dataset, Table
from apps.corpus.tests.factories import star_dataset
from apps.estimators.domain.models import EstimatorSpec
from apps.estimators.domain.services import label_dataset, score_vector
from apps.workload.domain.models import WorkloadParams
from apps.workload.domain.services import gen_workload

from ..domain.services import (
    SamplingSelector,
    SelectionError,
    sample_dataset,
    sampling_select,
)

POOL = [
    EstimatorSpec(id="hist-avi", kind="hist-avi", family="data_driven"),
    EstimatorSpec(
        id="sample-eval",
        kind="sample-eval",
        family="data_driven",
        hyperparams={"rate": 0.5},
    ),
]
WORKLOAD = WorkloadParams(n_train=5, n_test=20)


class TestSampleDataset(SimpleTestCase):
    """Test cases for sample_dataset."""

    def test_full_rate_keeps_everything(self) -> None:
        """Test rate 1.0 keeps every row."""
        d = star_dataset()

        sample = sample_dataset(d, 1.0, np.random.default_rng(0))

        self.assertEqual(sample.id, d.id)
        for t in d.tables:
            np.testing.assert_array_equal(
                sample.table(t.name).column("c0").values, t.column("c0").values
            )

    def test_no_dangling_foreign_keys(self) -> None:
        """Test every sampled FK value still has its PK row."""
        d = star_dataset(rows=200, child_rows=300)

        sample = sample_dataset(d, 0.3, np.random.default_rng(1))

        pk = set(sample.table("hub").column("id").values.tolist())
        for name in ("child0", "child1"):
            fk = sample.table(name).column("hub_id").values
            self.assertTrue(set(fk.tolist()) <= pk)
        self.assertLess(sample.total_rows, d.total_rows)

    def test_seeded(self) -> None:
        """Test equal seeds draw equal samples."""
        d = star_dataset()

        a = sample_dataset(d, 0.3, np.random.default_rng(4))
        b = sample_dataset(d, 0.3, np.random.default_rng(4))

        self.assertEqual(
            [t.n_rows for t in a.tables], [t.n_rows for t in b.tables]
        )

    def test_empty_sample(self) -> None:
        """Test a sample without rows is rejected."""
        d = Dataset(id="tiny", tables=[Table("t", [ColumnData("a", np.array([1]))])])

        with self.assertRaises(SelectionError):
            sample_dataset(d, 1e-12, np.random.default_rng(0))

    def test_rate_bounds(self) -> None:
        """Test rates outside (0, 1] are rejected."""
        for rate in (0.0, 1.5):
            with self.subTest(rate=rate), self.assertRaises(SelectionError):
                sample_dataset(star_dataset(), rate, np.random.default_rng(0))


class TestSamplingSelect(SimpleTestCase):
    """Test cases for sampling_select and SamplingSelector."""

    def test_full_rate_matches_labeling(self) -> None:
        """Test rate 1.0 picks what labeling the whole dataset picks."""
        d = star_dataset()
        w = gen_workload(d, 5, 20, 0.5, np.random.default_rng(3))
        full = label_dataset(d, POOL, w).records
        expected = score_vector(full, 1.0, [s.id for s in POOL]).best_id

        self.assertEqual(sampling_select(d, POOL, 1.0, WORKLOAD, 1.0, seed=3), expected)

    def test_returns_pool_member(self) -> None:
        """Test a partial sample still yields a pool member."""
        d = star_dataset(rows=100, child_rows=150)

        chosen = sampling_select(d, POOL, 0.3, WORKLOAD, 0.5, seed=2)

        self.assertIn(chosen, {s.id for s in POOL})

    def test_selector_caches_labels(self) -> None:
        """Test the selector agrees with sampling_select for every weight."""
        d = star_dataset(rows=100, child_rows=150)
        selector = SamplingSelector(POOL, WORKLOAD, sample_rate=0.5, seed=2)

        for w_a in (0.0, 0.5, 1.0):
            with self.subTest(w_a=w_a):
                self.assertEqual(
                    selector.select(d, w_a),
                    sampling_select(d, POOL, 0.5, WORKLOAD, w_a, seed=2),
                )
