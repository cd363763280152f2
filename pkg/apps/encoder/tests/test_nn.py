"""
Unit tests for the dense reverse-mode core.
"""

import numpy as np
from django.test import SimpleTestCase

from ..domain.services import MLP, sgd_step, softmax_cross_entropy
from ..domain.services.nn import affine_backward, affine_forward, mse_loss
from .helpers import numeric_gradients, relative_error


class TestAffine(SimpleTestCase):
    """Test cases for the affine map."""

    def test_quadratic_loss_closed_form(self) -> None:
        """Test dW = x^T (xW + b - y) for 0.5 * ||xW + b - y||^2."""
        rng = np.random.default_rng(0)
        x, w, b, y = (
            rng.normal(size=(5, 3)),
            rng.normal(size=(3, 2)),
            rng.normal(size=2),
            rng.normal(size=(5, 2)),
        )
        residual = affine_forward(x, w, b) - y
        dx, dw, db = affine_backward(x, w, residual)

        np.testing.assert_allclose(dw, x.T @ residual)
        np.testing.assert_allclose(db, residual.sum(axis=0))
        np.testing.assert_allclose(dx, residual @ w.T)


class TestMLP(SimpleTestCase):
    """Test cases for MLP."""

    def test_gradients_match_finite_differences(self) -> None:
        """Test backward against central differences under an MSE loss."""
        rng = np.random.default_rng(1)
        net = MLP([4, 6, 5, 2], rng)
        x, y = rng.normal(size=(7, 4)), rng.normal(size=(7, 2))

        pred, memory = net.forward(x)
        _, upstream = mse_loss(pred, y)
        analytic, _ = net.backward(memory, upstream)
        numeric = numeric_gradients(net.params, lambda: mse_loss(net.predict(x), y)[0])
        for name in net.params:
            self.assertLess(relative_error(analytic[name], numeric[name]), 1e-4)

    def test_multiply_adds(self) -> None:
        """Test the cost of one forward row."""
        net = MLP([10, 4, 1], np.random.default_rng(0))
        self.assertEqual(net.multiply_adds, 44)

    def test_sgd_with_zero_rate(self) -> None:
        """Test a zero learning rate leaves parameters unchanged."""
        net = MLP([3, 2], np.random.default_rng(2))
        before = {k: v.copy() for k, v in net.params.items()}
        grads = {k: np.ones_like(v) for k, v in net.params.items()}
        sgd_step(net.params, grads, 0.0)
        for name, value in before.items():
            np.testing.assert_array_equal(net.params[name], value)

    def test_rejects_degenerate_sizes(self) -> None:
        """Test a network needs two positive sizes."""
        with self.assertRaises(ValueError):
            MLP([3], np.random.default_rng(0))


class TestSoftmaxCrossEntropy(SimpleTestCase):
    """Test cases for softmax_cross_entropy."""

    def test_gradient(self) -> None:
        """Test the logits gradient against central differences."""
        rng = np.random.default_rng(3)
        logits = rng.normal(size=(4, 3))
        labels = np.array([0, 2, 1, 2])
        _, grad = softmax_cross_entropy(logits, labels)
        numeric = numeric_gradients(
            {"logits": logits}, lambda: softmax_cross_entropy(logits, labels)[0]
        )
        self.assertLess(relative_error(grad, numeric["logits"]), 1e-6)

    def test_uniform_logits(self) -> None:
        """Test the loss of uniform logits is log(C)."""
        loss, _ = softmax_cross_entropy(np.zeros((2, 4)), np.array([0, 3]))
        self.assertAlmostEqual(loss, np.log(4))
