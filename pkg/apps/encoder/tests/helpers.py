"""
Shared fixtures for encoder gradient tests.
"""

from collections.abc import Callable

import numpy as np

from apps.featurizer.domain.models import FeatureGraph

from ..domain.services import Params


def random_graph(
    rng: np.random.Generator, n: int, dim: int, dataset_id: str = "g"
) -> FeatureGraph:
    """Random feature graph with sparse edge weights in [0, 1]."""
    e = rng.random((n, n)) * (rng.random((n, n)) < 0.4)
    np.fill_diagonal(e, 0.0)
    return FeatureGraph(V=rng.random((n, dim)), E=e, dataset_id=dataset_id)


def numeric_gradients(
    params: Params, loss: Callable[[], float], step: float = 1e-5
) -> Params:
    """Central finite differences of ``loss`` w.r.t. every parameter entry."""
    grads: Params = {}
    for name, p in params.items():
        g = np.zeros_like(p)
        for idx in np.ndindex(p.shape):
            saved = p[idx]
            p[idx] = saved + step
            up = loss()
            p[idx] = saved - step
            down = loss()
            p[idx] = saved
            g[idx] = (up - down) / (2 * step)
        grads[name] = g
    return grads


def relative_error(a: np.ndarray, b: np.ndarray) -> float:
    scale = max(float(np.linalg.norm(a) + np.linalg.norm(b)), 1e-12)
    return float(np.linalg.norm(a - b)) / scale
