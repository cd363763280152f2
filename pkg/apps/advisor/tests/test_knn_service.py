"""
Unit tests for exact KNN selection.
"""

import numpy as np
from django.test import SimpleTestCase

from ..domain.services import AdvisorError, knn_select


class TestKnnSelect(SimpleTestCase):
    """Test cases for knn_select."""

    def setUp(self) -> None:
        rng = np.random.default_rng(3)
        self.vectors = rng.random((8, 4))
        self.labels = rng.random((8, 3))
        self.query = rng.random(4)

    def test_k1_takes_nearest_member(self) -> None:
        """Test k=1 returns the argmax of the closest member's scores."""
        result = knn_select(self.vectors, self.labels, self.query, 1)

        nearest = int(np.argmin(np.linalg.norm(self.vectors - self.query, axis=1)))
        self.assertEqual(result.neighbors.tolist(), [nearest])
        self.assertEqual(result.chosen, int(np.argmax(self.labels[nearest])))

    def test_matches_brute_force(self) -> None:
        """Test the choice equals the argmax of the k nearest rows' mean."""
        order = np.argsort(np.linalg.norm(self.vectors - self.query, axis=1))
        for k in range(1, 6):
            with self.subTest(k=k):
                result = knn_select(self.vectors, self.labels, self.query, k)
                expected = self.labels[order[:k]].mean(axis=0)
                np.testing.assert_allclose(result.averaged, expected)
                self.assertEqual(result.chosen, int(np.argmax(expected)))

    def test_distances_ascending(self) -> None:
        """Test neighbors come nearest first."""
        result = knn_select(self.vectors, self.labels, self.query, 5)

        self.assertTrue(np.all(np.diff(result.distances) >= 0))

    def test_score_tie_picks_lowest_index(self) -> None:
        """Test equal averaged scores resolve to the first estimator."""
        vectors = np.array([[0.0, 0.0], [2.0, 0.0]])
        labels = np.array([[1.0, 0.2], [0.2, 1.0]])

        result = knn_select(vectors, labels, np.array([1.0, 0.0]), 2)

        np.testing.assert_allclose(result.averaged, [0.6, 0.6])
        self.assertEqual(result.chosen, 0)

    def test_distance_tie_keeps_lower_row(self) -> None:
        """Test equidistant members are ranked by row order."""
        vectors = np.array([[1.0], [-1.0], [5.0]])
        labels = np.array([[0.0, 1.0], [1.0, 0.0], [1.0, 0.0]])

        result = knn_select(vectors, labels, np.array([0.0]), 1)

        self.assertEqual(result.neighbors.tolist(), [0])
        self.assertEqual(result.chosen, 1)

    def test_k_out_of_range(self) -> None:
        """Test k outside [1, n] is rejected."""
        for k in (0, 9):
            with self.subTest(k=k), self.assertRaises(AdvisorError):
                knn_select(self.vectors, self.labels, self.query, k)

    def test_shape_mismatch(self) -> None:
        """Test a query of the wrong width is rejected."""
        with self.assertRaises(AdvisorError):
            knn_select(self.vectors, self.labels, np.zeros(3), 1)
