"""
Similarity labels and contrastive losses over a batch of embeddings.

For anchor i, positives P_i are the other batch members whose score-vector
cosine similarity is at least tau, negatives N_i the remaining others. With
U the pairwise embedding distances and S the similarities, the weighted loss
is the batch mean of

    log sum_{k in P_i} exp(U_ik + S_ik) + log sum_{k in N_i} exp(g - U_ik - S_ik)

and the basic loss the batch mean of sum_{P_i} U_ik - sum_{N_i} U_ik. An
empty P_i or N_i drops its term.
"""

import numpy as np
from scipy.special import logsumexp, softmax

from ..models import DmlConfig


class TrainingError(Exception):
    """Raised when labels or training data are unusable."""

    pass


def cosine_sim(a: np.ndarray, b: np.ndarray) -> float:
    """
    Cosine similarity; 0 when either vector is zero.

    Raises:
        TrainingError: If the lengths differ
    """
    if a.shape != b.shape:
        raise TrainingError(f"Cannot compare vectors of shape {a.shape} and {b.shape}")
    norms = float(np.linalg.norm(a) * np.linalg.norm(b))
    if norms == 0.0:
        return 0.0
    return float(a @ b) / norms


def similarity_matrix(labels: np.ndarray) -> np.ndarray:
    """Pairwise ``cosine_sim`` of label rows."""
    norms = np.linalg.norm(labels, axis=1)
    unit = np.divide(
        labels, norms[:, None], out=np.zeros_like(labels), where=norms[:, None] > 0
    )
    return unit @ unit.T


def partition(sim: np.ndarray, i: int, tau: float) -> tuple[np.ndarray, np.ndarray]:
    """(positive indices, negative indices) of anchor ``i``, self excluded."""
    others = np.arange(sim.shape[0]) != i
    positive = others & (sim[i] >= tau)
    return np.flatnonzero(positive), np.flatnonzero(others & ~positive)


def _masks(sim: np.ndarray, tau: float) -> tuple[np.ndarray, np.ndarray]:
    others = ~np.eye(sim.shape[0], dtype=bool)
    positive = others & (sim >= tau)
    return positive, others & ~positive


def embed_distance(x_i: np.ndarray, x_j: np.ndarray) -> float:
    if x_i.shape != x_j.shape:
        raise TrainingError(f"Embedding shapes differ: {x_i.shape} vs {x_j.shape}")
    return float(np.linalg.norm(x_i - x_j))


def pairwise_distances(x: np.ndarray) -> np.ndarray:
    diff = x[:, None, :] - x[None, :, :]
    return np.sqrt(np.sum(diff**2, axis=-1))


def weighted_terms(
    u: np.ndarray, sim: np.ndarray, tau: float, margin: float
) -> tuple[np.ndarray, np.ndarray]:
    """
    Per-anchor weighted contrastive terms and ``G[i, j] = d term_i / d U_ij``.

    Positive pairs get ``+softmax_P(U + S)``, negative pairs
    ``-softmax_N(g - U - S)``; each anchor's positive weights sum to 1 and
    its negative weights to -1.
    """
    positive, negative = _masks(sim, tau)
    terms = np.zeros(u.shape[0])
    grads = np.zeros_like(u)
    for i in range(u.shape[0]):
        p, n = positive[i], negative[i]
        if p.any():
            logits = u[i, p] + sim[i, p]
            terms[i] += logsumexp(logits)
            grads[i, p] = softmax(logits)
        if n.any():
            logits = margin - u[i, n] - sim[i, n]
            terms[i] += logsumexp(logits)
            grads[i, n] = -softmax(logits)
    return terms, grads


def anchor_pair_gradients(
    u: np.ndarray, sim: np.ndarray, tau: float, margin: float
) -> np.ndarray:
    """Closed-form pair weights: derivative of each anchor's term by U_ij."""
    return weighted_terms(u, sim, tau, margin)[1]


def basic_terms(
    u: np.ndarray, sim: np.ndarray, tau: float
) -> tuple[np.ndarray, np.ndarray]:
    positive, negative = _masks(sim, tau)
    grads = positive.astype(np.float64) - negative.astype(np.float64)
    return np.sum(grads * u, axis=1), grads


def _embedding_gradient(x: np.ndarray, u: np.ndarray, g: np.ndarray) -> np.ndarray:
    """Chain dL/dU into dL/dX; coincident pairs contribute nothing."""
    c = np.divide(g, u, out=np.zeros_like(g), where=u > 0)
    return (
        c.sum(axis=1)[:, None] * x
        - c @ x
        + c.sum(axis=0)[:, None] * x
        - c.T @ x
    )


def _check_batch(x: np.ndarray, labels: np.ndarray) -> None:
    if x.shape[0] < 2 or x.shape[0] != labels.shape[0]:
        raise TrainingError(
            f"Need a batch of at least 2 with one label each, got {x.shape[0]} "
            f"embeddings and {labels.shape[0]} labels"
        )


def weighted_contrastive_loss(
    x: np.ndarray, labels: np.ndarray, cfg: DmlConfig
) -> tuple[float, np.ndarray]:
    """Returns (batch loss, gradient w.r.t. the embeddings ``x``)."""
    _check_batch(x, labels)
    u = pairwise_distances(x)
    terms, g = weighted_terms(u, similarity_matrix(labels), cfg.tau, cfg.margin)
    m = x.shape[0]
    return float(terms.mean()), _embedding_gradient(x, u, g / m)


def basic_contrastive_loss(
    x: np.ndarray, labels: np.ndarray, cfg: DmlConfig
) -> tuple[float, np.ndarray]:
    """Returns (batch loss, gradient w.r.t. the embeddings ``x``)."""
    _check_batch(x, labels)
    u = pairwise_distances(x)
    terms, g = basic_terms(u, similarity_matrix(labels), cfg.tau)
    m = x.shape[0]
    return float(terms.mean()), _embedding_gradient(x, u, g / m)


def positive_ratio(labels: np.ndarray, tau: float) -> float:
    """Share of ordered non-self pairs that are positive."""
    positive, negative = _masks(similarity_matrix(labels), tau)
    total = positive.sum() + negative.sum()
    return float(positive.sum() / total) if total else 0.0
