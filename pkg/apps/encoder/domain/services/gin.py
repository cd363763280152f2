"""
GIN graph encoder over feature graphs.

Each GINConv layer computes ``f((1 + eps) * H + E' @ H)`` with
``f = affine -> ReLU -> affine`` and ``E' = max(E, E^T)``. Vertex outputs of
the last layer are sum pooled and projected to the embedding dimension.

Parameter names: ``gin<l>.eps``, ``gin<l>.W0``, ``gin<l>.b0``, ``gin<l>.W1``,
``gin<l>.b1`` per layer, then ``out.W``, ``out.b``.
"""

import copy
import logging
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from apps.featurizer.domain.models import FeatureGraph

from ..models import EncoderConfig, Embedding
from .nn import (
    Params,
    affine_backward,
    affine_forward,
    init_affine,
    relu,
    relu_backward,
)

logger = logging.getLogger(__name__)


class EncoderError(Exception):
    """Raised on shape mismatches or a backward pass without a forward pass."""

    pass


LayerMemory = tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]


def symmetrize(e: np.ndarray) -> np.ndarray:
    return np.maximum(e, e.T)


def ginconv_forward(
    h: np.ndarray, adjacency: np.ndarray, params: Params, layer: int
) -> tuple[np.ndarray, LayerMemory]:
    """
    One GINConv layer.

    Returns:
        (vertex outputs, memory for ``ginconv_backward``)

    Raises:
        EncoderError: If ``h``, ``adjacency`` and the layer weights disagree
    """
    w0, b0 = params[f"gin{layer}.W0"], params[f"gin{layer}.b0"]
    w1, b1 = params[f"gin{layer}.W1"], params[f"gin{layer}.b1"]
    n = h.shape[0]
    if adjacency.shape != (n, n) or h.shape[1] != w0.shape[0]:
        raise EncoderError(
            f"Layer {layer}: features {h.shape}, adjacency {adjacency.shape}, "
            f"weights expect width {w0.shape[0]}"
        )
    eps = float(params[f"gin{layer}.eps"][0])
    z = (1.0 + eps) * h + adjacency @ h
    pre = affine_forward(z, w0, b0)
    act = relu(pre)
    return affine_forward(act, w1, b1), (h, z, pre, act)


def ginconv_backward(
    adjacency: np.ndarray,
    params: Params,
    layer: int,
    memory: LayerMemory,
    upstream: np.ndarray,
) -> tuple[Params, np.ndarray]:
    """Returns (gradients of this layer's parameters, gradient w.r.t. ``h``)."""
    h, z, pre, act = memory
    name = f"gin{layer}"
    grads: Params = {}
    dact, grads[f"{name}.W1"], grads[f"{name}.b1"] = affine_backward(
        act, params[f"{name}.W1"], upstream
    )
    dpre = relu_backward(pre, dact)
    dz, grads[f"{name}.W0"], grads[f"{name}.b0"] = affine_backward(
        z, params[f"{name}.W0"], dpre
    )
    eps = float(params[f"{name}.eps"][0])
    grads[f"{name}.eps"] = np.array([np.sum(dz * h)])
    return grads, (1.0 + eps) * dz + adjacency.T @ dz


@dataclass
class _GraphTape:
    adjacency: np.ndarray
    layers: list[LayerMemory]
    pooled: np.ndarray


class GINEncoder:
    """
    Trainable graph encoder.

    ``encode`` and ``encode_many`` are pure. ``forward`` records what
    ``backward`` needs; ``backward`` consumes that record.
    """

    def __init__(
        self, cfg: EncoderConfig, input_dim: int, params: Params | None = None
    ) -> None:
        if input_dim < 1:
            raise EncoderError(f"Input width must be positive, got {input_dim}")
        self.cfg = cfg
        self.input_dim = input_dim
        self.params = self._init_params() if params is None else params
        expected = self.param_shapes()
        actual = {k: v.shape for k, v in self.params.items()}
        if actual != expected:
            raise EncoderError(
                f"Parameters do not match the encoder shape: {sorted(actual)} "
                f"vs {sorted(expected)}"
            )
        self._tape: list[_GraphTape] | None = None

    def param_shapes(self) -> dict[str, tuple[int, ...]]:
        shapes: dict[str, tuple[int, ...]] = {}
        width, hidden = self.input_dim, self.cfg.hidden
        for layer in range(self.cfg.n_layers):
            shapes[f"gin{layer}.eps"] = (1,)
            shapes[f"gin{layer}.W0"] = (width, hidden)
            shapes[f"gin{layer}.b0"] = (hidden,)
            shapes[f"gin{layer}.W1"] = (hidden, hidden)
            shapes[f"gin{layer}.b1"] = (hidden,)
            width = hidden
        shapes["out.W"] = (hidden, self.cfg.embed_dim)
        shapes["out.b"] = (self.cfg.embed_dim,)
        return shapes

    def _init_params(self) -> Params:
        rng = np.random.default_rng(self.cfg.init_seed)
        params: Params = {}
        width, hidden = self.input_dim, self.cfg.hidden
        for layer in range(self.cfg.n_layers):
            params[f"gin{layer}.eps"] = np.zeros(1)
            params[f"gin{layer}.W0"], params[f"gin{layer}.b0"] = init_affine(
                rng, width, hidden
            )
            params[f"gin{layer}.W1"], params[f"gin{layer}.b1"] = init_affine(
                rng, hidden, hidden
            )
            width = hidden
        params["out.W"], params["out.b"] = init_affine(rng, hidden, self.cfg.embed_dim)
        return params

    def copy(self) -> "GINEncoder":
        return GINEncoder(self.cfg, self.input_dim, copy.deepcopy(self.params))

    def _forward_one(self, g: FeatureGraph) -> tuple[np.ndarray, _GraphTape]:
        if g.feature_dim != self.input_dim:
            raise EncoderError(
                f"Graph '{g.dataset_id}' has {g.feature_dim} features per vertex, "
                f"encoder expects {self.input_dim}"
            )
        adjacency = symmetrize(g.E)
        h = g.V
        layers: list[LayerMemory] = []
        for layer in range(self.cfg.n_layers):
            h, memory = ginconv_forward(h, adjacency, self.params, layer)
            layers.append(memory)
        pooled = h.sum(axis=0)
        x = pooled @ self.params["out.W"] + self.params["out.b"]
        return x, _GraphTape(adjacency, layers, pooled)

    def encode(self, g: FeatureGraph) -> Embedding:
        return Embedding(self._forward_one(g)[0])

    def encode_many(self, graphs: Sequence[FeatureGraph]) -> np.ndarray:
        """Embeddings of ``graphs`` as rows of an [n, embed_dim] matrix."""
        if not graphs:
            return np.zeros((0, self.cfg.embed_dim))
        return np.vstack([self._forward_one(g)[0] for g in graphs])

    def forward(self, graphs: Sequence[FeatureGraph]) -> np.ndarray:
        """``encode_many`` that also records the pass for ``backward``."""
        outputs, tape = [], []
        for g in graphs:
            x, record = self._forward_one(g)
            outputs.append(x)
            tape.append(record)
        self._tape = tape
        return np.vstack(outputs) if outputs else np.zeros((0, self.cfg.embed_dim))

    def backward(self, upstream: np.ndarray) -> Params:
        """
        Gradients of every parameter given dLoss/dEmbedding for each graph of
        the last ``forward``; per-graph gradients are summed.

        Raises:
            EncoderError: Without a preceding ``forward`` or on a shape mismatch
        """
        if self._tape is None:
            raise EncoderError("backward called without a recorded forward pass")
        tape, self._tape = self._tape, None
        if upstream.shape != (len(tape), self.cfg.embed_dim):
            raise EncoderError(
                f"Upstream gradient of shape {upstream.shape}, expected "
                f"{(len(tape), self.cfg.embed_dim)}"
            )
        grads: Params = {k: np.zeros_like(v) for k, v in self.params.items()}
        for record, up in zip(tape, upstream, strict=True):
            grads["out.W"] += np.outer(record.pooled, up)
            grads["out.b"] += up
            n = record.adjacency.shape[0]
            dh = np.tile(self.params["out.W"] @ up, (n, 1))
            for layer in reversed(range(self.cfg.n_layers)):
                layer_grads, dh = ginconv_backward(
                    record.adjacency, self.params, layer, record.layers[layer], dh
                )
                for name, grad in layer_grads.items():
                    grads[name] += grad
        return grads
