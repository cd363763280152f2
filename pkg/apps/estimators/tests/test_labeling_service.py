"""
Unit tests for the labeling testbed.
"""

import tempfile
from pathlib import Path

import numpy as np
from django.test import SimpleTestCase

from apps.corpus.domain.models import ColumnData, Dataset, Table
from apps.corpus.domain.services import LabelStore
from apps.corpus.tests.factories import star_dataset
from apps.workload.domain.models import Workload
from apps.workload.domain.services import gen_workload

from ..domain.models import EstimatorSpec
from ..domain.services import EstimatorError, LabelingError, label_dataset


def _correlated_dataset() -> Dataset:
    values = np.random.default_rng(5).integers(1, 51, size=3000)
    t = Table("t", [ColumnData("c0", values), ColumnData("c1", values.copy())])
    return Dataset(id="corr", tables=[t])


def _spec(id_: str, kind: str, **hyperparams: float) -> EstimatorSpec:
    family = "query_driven" if kind.startswith("qd-") else "data_driven"
    return EstimatorSpec(id=id_, kind=kind, family=family, hyperparams=hyperparams)


class TestLabelDataset(SimpleTestCase):
    """Test cases for label_dataset."""

    def setUp(self) -> None:
        """Set up a small dataset with a labeled workload."""
        self.d = star_dataset()
        self.w = gen_workload(self.d, 40, 20, 0.5, np.random.default_rng(0))

    def test_single_member_pool(self) -> None:
        """Test a pool of one yields one record."""
        result = label_dataset(self.d, [_spec("h", "hist-avi")], self.w)

        self.assertEqual(len(result.records), 1)
        self.assertEqual(result.records[0].estimator_id, "h")
        self.assertEqual(result.records[0].unit, "cost")
        self.assertEqual(result.failures, [])

    def test_same_kind_twice(self) -> None:
        """Test two ids of one configuration get identical Q-errors."""
        pool = [_spec("a", "chain-bayes"), _spec("b", "chain-bayes")]
        a, b = label_dataset(self.d, pool, self.w).records
        self.assertEqual(a.qerr_mean, b.qerr_mean)
        self.assertEqual(a.latency_mean, b.latency_mean)

    def test_exact_sampler_beats_avi_on_correlated_data(self) -> None:
        """Test a full-rate sample is exact while AVI misses correlation."""
        d = _correlated_dataset()
        w = gen_workload(d, 0, 30, 1.0, np.random.default_rng(1))
        pool = [_spec("exact", "sample-eval", rate=1.0), _spec("avi", "hist-avi")]
        exact, avi = label_dataset(d, pool, w).records

        self.assertEqual(exact.qerr_mean, 1.0)
        self.assertGreater(avi.qerr_mean, 1.0)

    def test_failure_is_reported(self) -> None:
        """Test a member without training queries fails alone."""
        w = Workload(dataset_id=self.d.id, train=[], test=self.w.test)
        pool = [_spec("h", "hist-avi"), _spec("lin", "qd-linear")]
        result = label_dataset(self.d, pool, w)

        self.assertEqual([r.estimator_id for r in result.records], ["h"])
        self.assertEqual(len(result.failures), 1)
        self.assertEqual(result.failures[0].estimator_id, "lin")
        self.assertEqual(result.failures[0].kind, "EstimatorError")

    def test_records_are_appended_to_store(self) -> None:
        """Test results land in the label store."""
        with tempfile.TemporaryDirectory() as tmp:
            store = LabelStore(Path(tmp) / "labels.jsonl")
            pool = [_spec("h", "hist-avi"), _spec("s", "sample-eval")]
            label_dataset(self.d, pool, self.w, store=store)

            self.assertEqual(
                [r.estimator_id for r in store.read(self.d.id)], ["h", "s"]
            )

    def test_wall_clock_unit(self) -> None:
        """Test latencies in milliseconds are tagged as such."""
        result = label_dataset(self.d, [_spec("h", "hist-avi")], self.w, unit="ms")
        self.assertEqual(result.records[0].unit, "ms")
        self.assertGreaterEqual(result.records[0].latency_mean, 0.0)

    def test_empty_test_split(self) -> None:
        """Test a dataset without test queries cannot be labeled."""
        w = Workload(dataset_id=self.d.id, train=self.w.train, test=[])
        with self.assertRaises(LabelingError):
            label_dataset(self.d, [_spec("h", "hist-avi")], w)

    def test_unlabeled_test_split(self) -> None:
        """Test test queries need true cardinalities."""
        w = gen_workload(
            self.d, 5, 5, 0.5, np.random.default_rng(2), with_cards=False
        )
        with self.assertRaises(LabelingError):
            label_dataset(self.d, [_spec("h", "hist-avi")], w)

    def test_malformed_pool(self) -> None:
        """Test duplicate ids and family mismatches."""
        with self.assertRaises(EstimatorError):
            label_dataset(
                self.d, [_spec("h", "hist-avi"), _spec("h", "chain-bayes")], self.w
            )
        wrong_family = EstimatorSpec(id="x", kind="qd-mlp", family="data_driven")
        with self.assertRaises(EstimatorError):
            label_dataset(self.d, [wrong_family], self.w)
