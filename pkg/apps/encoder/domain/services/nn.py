"""
Minimal reverse-mode numeric core: affine maps, ReLU, multilayer perceptrons,
losses and a plain SGD step. Every forward returns the memory its backward
needs; nothing is recorded globally.
"""

from collections.abc import Sequence

import numpy as np

Params = dict[str, np.ndarray]


def relu(z: np.ndarray) -> np.ndarray:
    return np.maximum(z, 0.0)


def relu_backward(z: np.ndarray, upstream: np.ndarray) -> np.ndarray:
    return np.where(z > 0.0, upstream, 0.0)


def affine_forward(x: np.ndarray, w: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Row-batched ``x @ w + b``; x is [n, in], w is [in, out]."""
    return x @ w + b


def affine_backward(
    x: np.ndarray, w: np.ndarray, upstream: np.ndarray
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Returns (dx, dw, db) for ``affine_forward``."""
    return upstream @ w.T, x.T @ upstream, upstream.sum(axis=0)


def init_affine(
    rng: np.random.Generator, fan_in: int, fan_out: int
) -> tuple[np.ndarray, np.ndarray]:
    """Uniform fan-in scaled weights, zero bias."""
    bound = 1.0 / np.sqrt(fan_in)
    w = rng.uniform(-bound, bound, size=(fan_in, fan_out))
    return w, np.zeros(fan_out)


class MLP:
    """
    Affine layers with ReLU between them and no activation after the last.

    Parameters live in ``params`` as ``W0, b0, W1, b1, ...`` so they can be
    stepped and serialized as a flat name -> array map.
    """

    def __init__(self, sizes: Sequence[int], rng: np.random.Generator) -> None:
        if len(sizes) < 2 or min(sizes) < 1:
            raise ValueError(f"MLP needs at least two positive layer sizes: {sizes}")
        self.sizes = list(sizes)
        self.params: Params = {}
        pairs = zip(sizes[:-1], sizes[1:], strict=True)
        for i, (fan_in, fan_out) in enumerate(pairs):
            w, b = init_affine(rng, fan_in, fan_out)
            self.params[f"W{i}"], self.params[f"b{i}"] = w, b

    @property
    def n_layers(self) -> int:
        return len(self.sizes) - 1

    @property
    def multiply_adds(self) -> int:
        """Multiply-adds of one forward pass for a single row."""
        return sum(a * b for a, b in zip(self.sizes[:-1], self.sizes[1:], strict=True))

    def forward(self, x: np.ndarray) -> tuple[np.ndarray, list[np.ndarray]]:
        """Returns (output, memory) where memory holds each layer's input and
        pre-activation."""
        memory: list[np.ndarray] = []
        h = x
        for i in range(self.n_layers):
            z = affine_forward(h, self.params[f"W{i}"], self.params[f"b{i}"])
            memory.extend((h, z))
            h = relu(z) if i < self.n_layers - 1 else z
        return h, memory

    def predict(self, x: np.ndarray) -> np.ndarray:
        return self.forward(x)[0]

    def backward(
        self, memory: list[np.ndarray], upstream: np.ndarray
    ) -> tuple[Params, np.ndarray]:
        """Returns (parameter gradients, gradient w.r.t. the input)."""
        grads: Params = {}
        delta = upstream
        for i in reversed(range(self.n_layers)):
            h, z = memory[2 * i], memory[2 * i + 1]
            if i < self.n_layers - 1:
                delta = relu_backward(z, delta)
            delta, grads[f"W{i}"], grads[f"b{i}"] = affine_backward(
                h, self.params[f"W{i}"], delta
            )
        return grads, delta


def sgd_step(params: Params, grads: Params, lr: float) -> None:
    """In-place ``p <- p - lr * g`` for every parameter with a gradient."""
    for name, grad in grads.items():
        params[name] -= lr * grad


def mse_loss(pred: np.ndarray, target: np.ndarray) -> tuple[float, np.ndarray]:
    """Mean squared error and its gradient w.r.t. ``pred``."""
    diff = pred - target
    return float(np.mean(diff**2)), 2.0 * diff / diff.size


def softmax_cross_entropy(
    logits: np.ndarray, labels: np.ndarray
) -> tuple[float, np.ndarray]:
    """Mean cross-entropy over rows and its gradient w.r.t. ``logits``."""
    shifted = logits - logits.max(axis=1, keepdims=True)
    probs = np.exp(shifted)
    probs /= probs.sum(axis=1, keepdims=True)
    n = logits.shape[0]
    loss = -float(np.mean(np.log(probs[np.arange(n), labels] + 1e-300)))
    grad = probs.copy()
    grad[np.arange(n), labels] -= 1.0
    return loss, grad / n
