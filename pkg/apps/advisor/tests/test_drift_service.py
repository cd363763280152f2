"""
Unit tests for drift detection and online adaptation.
"""

import math

import numpy as np
from django.test import SimpleTestCase

from apps.corpus.tests.factories import star_dataset
from apps.dml.domain.models import DmlConfig
from apps.estimators.domain.models import EstimatorSpec
from apps.estimators.domain.services import d_error, score_vector
from apps.workload.domain.models import WorkloadParams

from ..domain.services import (
    AdaptResult,
    AdvisorError,
    DriftError,
    build_rcs,
    check_drift,
    detect_drift,
    drift_distance,
    drift_threshold,
    nearest_rank_percentile,
    online_adapt,
    recommend,
)
from .helpers import (
    alternating_records,
    rcs_with_drift_vectors,
    small_corpus,
    small_rcs,
    untrained_model,
)


class TestNearestRankPercentile(SimpleTestCase):
    """Test cases for nearest_rank_percentile."""

    def test_ninetieth_of_ten(self) -> None:
        """Test the 90th percentile of 1..10 is 9."""
        values = np.random.default_rng(0).permutation(np.arange(1, 11))

        self.assertEqual(nearest_rank_percentile(values, 90.0), 9.0)

    def test_single_value(self) -> None:
        """Test a single value is its own percentile."""
        self.assertEqual(nearest_rank_percentile([4.0], 90.0), 4.0)

    def test_empty(self) -> None:
        """Test an empty sample is rejected."""
        with self.assertRaises(DriftError):
            nearest_rank_percentile([], 90.0)


class TestDriftThreshold(SimpleTestCase):
    """Test cases for drift_threshold."""

    def setUp(self) -> None:
        _, self.rcs = small_rcs(3)

    def test_pairs(self) -> None:
        """Test the threshold over pairs with gaps 1..5 is 5."""
        vectors = np.array(
            [[1000.0 * g + offset, 0.0] for g in range(1, 6) for offset in (0.0, g)]
        )
        rcs = rcs_with_drift_vectors(self.rcs, vectors)

        self.assertEqual(drift_threshold(rcs), 5.0)

    def test_duplicates(self) -> None:
        """Test identical members give a zero threshold."""
        rcs = rcs_with_drift_vectors(self.rcs, np.ones((4, 3)))

        self.assertEqual(drift_threshold(rcs), 0.0)

    def test_too_small(self) -> None:
        """Test a one-member RCS has no threshold."""
        rcs = rcs_with_drift_vectors(self.rcs, np.ones((1, 3)))

        with self.assertRaises(DriftError):
            drift_threshold(rcs)


class TestDetectDrift(SimpleTestCase):
    """Test cases for detect_drift and check_drift."""

    def setUp(self) -> None:
        self.corpus, self.rcs = small_rcs()
        self.threshold = drift_threshold(self.rcs)

    def test_member_is_in_distribution(self) -> None:
        """Test an RCS member sits at distance zero from itself."""
        distance, nearest = drift_distance(self.corpus[3], self.rcs)

        self.assertEqual(distance, 0.0)
        self.assertEqual(nearest, self.corpus[3].id)
        self.assertFalse(detect_drift(self.corpus[3], self.rcs, self.threshold))

    def test_outlier_drifts(self) -> None:
        """Test a dataset with a far larger value domain is flagged."""
        outlier = star_dataset("far", n_children=1, domain=100_000, seed=5)

        self.assertTrue(detect_drift(outlier, self.rcs, self.threshold))

    def test_infinite_threshold(self) -> None:
        """Test nothing drifts past an infinite threshold."""
        outlier = star_dataset("far", n_children=1, domain=100_000, seed=5)

        self.assertFalse(detect_drift(outlier, self.rcs, math.inf))

    def test_more_tables_drift(self) -> None:
        """Test a dataset with more tables than any member is compared and flagged."""
        wide = star_dataset("wide", n_children=4, domain=20, seed=3)

        distance, nearest = drift_distance(wide, self.rcs)

        self.assertTrue(math.isfinite(distance))
        self.assertIn(nearest, {d.id for d in self.corpus if len(d.tables) == 3})
        self.assertTrue(detect_drift(wide, self.rcs, self.threshold))

    def test_more_columns_measured(self) -> None:
        """Test a dataset with more columns than the layout gets a finite distance."""
        wide = star_dataset("cols", n_children=1, n_cols=5, domain=20, seed=3)

        report = check_drift(wide, self.rcs)

        self.assertTrue(math.isfinite(report.distance))
        self.assertGreater(report.distance, 0.0)

    def test_report(self) -> None:
        """Test check_drift derives the threshold from the RCS by default."""
        outlier = star_dataset("far", n_children=1, domain=100_000, seed=5)

        report = check_drift(outlier, self.rcs)

        self.assertEqual(report.dataset_id, "far")
        self.assertEqual(report.threshold, self.threshold)
        self.assertTrue(report.drift)
        self.assertGreater(report.distance, report.threshold)


class TestOnlineAdapt(SimpleTestCase):
    """Test cases for online_adapt."""

    def setUp(self) -> None:
        self.pool = [
            EstimatorSpec(id="hist-avi", kind="hist-avi", family="data_driven"),
            EstimatorSpec(
                id="sample-eval",
                kind="sample-eval",
                family="data_driven",
                hyperparams={"rate": 0.5},
            ),
        ]
        ids = tuple(s.id for s in self.pool)
        self.corpus = small_corpus()
        self.rcs = build_rcs(
            self.corpus,
            untrained_model(self.corpus),
            alternating_records(self.corpus, ids),
            ids,
        )
        self.new = star_dataset("new", n_children=2, domain=40, seed=11)

    def _adapt(self) -> AdaptResult:
        return online_adapt(
            self.new,
            self.rcs,
            self.pool,
            WorkloadParams(n_train=5, n_test=20),
            DmlConfig(epochs=2, lr=0.01),
            seed=1,
        )

    def test_grows_rcs(self) -> None:
        """Test the adapted RCS holds one more dataset and the input is untouched."""
        result = self._adapt()

        self.assertEqual(len(result.rcs), len(self.corpus) + 1)
        self.assertEqual(result.rcs.dataset_ids[-1], "new")
        self.assertEqual(len(self.rcs), len(self.corpus))
        labeled = {r.estimator_id for r in result.records}
        self.assertEqual(labeled, set(self.rcs.estimator_ids))

    def test_self_retrieval(self) -> None:
        """Test the adapted advisor recommends the new dataset's own best estimator."""
        result = self._adapt()

        rec = recommend(self.new, result.rcs, k=1)

        self.assertEqual(rec.neighbor_ids, ["new"])
        truth = score_vector(result.records, 1.0, result.rcs.estimator_ids)
        self.assertEqual(d_error(truth, rec.chosen), 0.0)

    def test_reembeds_members(self) -> None:
        """Test every stored embedding comes from the fine-tuned encoder."""
        result = self._adapt()

        for d, entry in zip(self.corpus, result.rcs.entries, strict=False):
            np.testing.assert_allclose(entry.embedding, result.model.embed(d).x)

    def test_returns_workload(self) -> None:
        """Test the labeling workload comes back with the adapted RCS."""
        result = self._adapt()

        self.assertEqual(result.workload.dataset_id, "new")
        self.assertTrue(result.workload.test)
        self.assertTrue(result.workload.is_labeled)

    def test_rejects_dataset_beyond_layout(self) -> None:
        """Test adaptation refuses a dataset the encoder cannot featurize."""
        wide = star_dataset("wide", n_children=4, domain=40, seed=11)

        with self.assertRaises(AdvisorError):
            online_adapt(
                wide,
                self.rcs,
                self.pool,
                WorkloadParams(n_train=5, n_test=20),
                DmlConfig(epochs=2, lr=0.01),
            )
