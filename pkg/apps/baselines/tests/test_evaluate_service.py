"""
Unit tests for strategy evaluation and its report files.
"""

import tempfile
from pathlib import Path

import pandas as pd
from django.test import SimpleTestCase

from apps.advisor.tests.helpers import ESTIMATORS, record
from apps.corpus.domain.models import Dataset
from apps.corpus.tests.factories import DatasetFactory
from apps.estimators.domain.services import d_error, score_vector

from ..domain.models import EvalReport
from ..domain.services import (
    SelectionError,
    evaluate,
    format_summary,
    oracle_select,
    write_eval_report,
)


class TestEvaluate(SimpleTestCase):
    """Test cases for evaluate."""

    def setUp(self) -> None:
        self.corpus = [DatasetFactory(id=f"t{i}") for i in range(5)]
        self.records = {
            d.id: [
                record(d.id, "e1", 1.0 + i, 1.0 + 2 * i),
                record(d.id, "e2", 3.0, 4.0),
            ]
            for i, d in enumerate(self.corpus)
        }

        def oracle(d: Dataset, w_a: float) -> str:
            return oracle_select(self.records[d.id], w_a, ESTIMATORS)

        self.strategies = {
            "oracle": oracle,
            "always-e1": lambda d, w_a: "e1",
            "always-e2": lambda d, w_a: "e2",
        }

    def _run(self, w_grid: tuple[float, ...] = (0.5, 1.0)) -> EvalReport:
        return evaluate(self.strategies, self.corpus, self.records, ESTIMATORS, w_grid)

    def test_oracle_is_perfect(self) -> None:
        """Test the oracle has zero D-error and full accuracy."""
        report = self._run()

        for w_a in (0.5, 1.0):
            s = report.summary("oracle", w_a)
            self.assertEqual(s.mean_derror, 0.0)
            self.assertEqual(set(s.accuracy.values()), {1.0})

    def test_accuracy_monotone(self) -> None:
        """Test accuracy never drops as epsilon grows."""
        report = self._run()

        for s in report.summaries:
            values = list(s.accuracy.values())
            self.assertEqual(values, sorted(values))

    def test_rows_match_d_error(self) -> None:
        """Test each row's D-error equals an independent recomputation."""
        report = self._run()

        self.assertEqual(len(report.rows), 3 * 5 * 2)
        for row in report.rows:
            truth = score_vector(self.records[row.dataset_id], row.w_a, ESTIMATORS)
            self.assertEqual(row.d_error, d_error(truth, row.chosen))
            self.assertEqual(row.optimum, truth.best_id)

    def test_grid_points_reported(self) -> None:
        """Test every requested weight has a summary per strategy."""
        report = self._run((0.0, 0.3, 1.0))

        self.assertEqual(len(report.summaries), 9)
        self.assertEqual(report.strategies, ["oracle", "always-e1", "always-e2"])

    def test_invalid_choice(self) -> None:
        """Test a strategy returning a non-member is an error."""
        with self.assertRaises(SelectionError):
            evaluate(
                {"bad": lambda d, w_a: "nope"},
                self.corpus,
                self.records,
                ESTIMATORS,
                [1.0],
            )

    def test_candidate_scored_with_pool(self) -> None:
        """Test a candidate's D-error is measured against pool and candidate."""
        candidates = {"slow": lambda d, w_a: record(d.id, "slow", 2.0, 50.0)}

        report = evaluate(
            {}, self.corpus, self.records, ESTIMATORS, [0.5], candidates
        )

        self.assertEqual(len(report.rows), 5)
        for row in report.rows:
            slow = record(row.dataset_id, "slow", 2.0, 50.0)
            joint = [*self.records[row.dataset_id], slow]
            scores = score_vector(joint, 0.5, [*ESTIMATORS, "slow"])
            self.assertEqual(row.chosen, "slow")
            self.assertEqual(row.d_error, d_error(scores, "slow"))
            self.assertEqual(row.optimum, scores.best_id)
        self.assertEqual(report.strategies, ["slow"])

    def test_dominant_candidate(self) -> None:
        """Test a candidate better than every member has zero D-error."""
        candidates = {"best": lambda d, w_a: record(d.id, "best", 1.0, 0.5)}

        report = evaluate(
            self.strategies, self.corpus, self.records, ESTIMATORS, [1.0], candidates
        )

        self.assertEqual(report.summary("best", 1.0).mean_derror, 0.0)
        self.assertEqual(len(report.timings), 4 * 5)

    def test_candidate_reusing_pool_id(self) -> None:
        """Test a candidate may not pose as a pool member."""
        with self.assertRaises(SelectionError):
            evaluate(
                {},
                self.corpus,
                self.records,
                ESTIMATORS,
                [1.0],
                {"fake": lambda d, w_a: record(d.id, "e1", 1.0)},
            )

    def test_missing_labels(self) -> None:
        """Test a test dataset without labels is an error."""
        with self.assertRaises(SelectionError):
            evaluate(
                self.strategies,
                [*self.corpus, DatasetFactory(id="unlabeled")],
                self.records,
                ESTIMATORS,
                [1.0],
            )

    def test_report_files(self) -> None:
        """Test report files are written and the summary table names strategies."""
        report = self._run()

        with tempfile.TemporaryDirectory() as tmp:
            paths = write_eval_report(tmp, report)
            self.assertTrue(all(p.is_file() for p in paths))
            rows = pd.read_csv(Path(tmp) / "eval_rows.csv")
            summary = pd.read_csv(Path(tmp) / "eval_summary.csv")

        self.assertEqual(len(rows), len(report.rows))
        self.assertIn("acc@0.10", summary.columns)
        self.assertIn("always-e2", format_summary(report))
