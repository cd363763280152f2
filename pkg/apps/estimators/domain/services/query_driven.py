"""
Query-driven estimators: regress log-cardinality from encoded queries.

A query is encoded as table membership one-hots, join edge one-hots and, per
attribute column, the filtered share of the column's observed range plus its
log. Unfiltered columns encode as width 1.0.
"""

import logging
from collections.abc import Sequence

import numpy as np

from apps.corpus.domain.models import Dataset
from apps.encoder.domain.services.nn import MLP, mse_loss, sgd_step
from apps.workload.domain.models import JoinPredicate, Query

from .registry import (
    CardEstimator,
    EstimatorError,
    MissingCardinalityError,
    register_estimator,
)

logger = logging.getLogger(__name__)

MIN_WIDTH = 1e-3
MAX_LOG_CARD = 700.0


class QueryFeaturizer:
    """Fixed-length query encoding over one dataset's schema."""

    def __init__(self, d: Dataset) -> None:
        self.tables = {name: i for i, name in enumerate(d.table_names)}
        self.edges = {
            str(JoinPredicate.from_edge(e)): i for i, e in enumerate(d.joins)
        }
        self.columns: dict[tuple[str, str], tuple[int, int, int]] = {}
        for t in d.tables:
            for name in d.attribute_columns(t.name):
                values = t.column(name).values
                lo, hi = (int(values.min()), int(values.max())) if t.n_rows else (0, 0)
                self.columns[(t.name, name)] = (len(self.columns), lo, hi)

    @property
    def dim(self) -> int:
        return len(self.tables) + len(self.edges) + 2 * len(self.columns)

    def encode(self, q: Query) -> np.ndarray:
        n_t, n_j, n_c = len(self.tables), len(self.edges), len(self.columns)
        x = np.zeros(self.dim)
        for table in q.tables:
            x[self.tables[table]] = 1.0
        for j in q.join_predicates:
            key = str(j)
            if key not in self.edges:
                raise EstimatorError(f"Join '{key}' is not a schema edge")
            x[n_t + self.edges[key]] = 1.0

        widths = np.ones(n_c)
        for r in q.range_predicates:
            if (r.table, r.column) not in self.columns:
                raise EstimatorError(f"{r.table}.{r.column} is not an attribute column")
            i, lo, hi = self.columns[(r.table, r.column)]
            covered = min(r.hi, hi) - max(r.lo, lo) + 1
            widths[i] = min(widths[i], max(covered, 0) / (hi - lo + 1))
        x[n_t + n_j : n_t + n_j + n_c] = widths
        x[n_t + n_j + n_c :] = np.log(np.maximum(widths, MIN_WIDTH))
        return x

    def encode_many(self, queries: Sequence[Query]) -> np.ndarray:
        return np.vstack([self.encode(q) for q in queries])


def _training_set(
    kind: str, d: Dataset, train: Sequence[Query]
) -> tuple[QueryFeaturizer, np.ndarray, np.ndarray]:
    if not train:
        raise EstimatorError(
            f"{kind} needs training queries; dataset '{d.id}' has none"
        )
    if any(q.true_card is None for q in train):
        raise MissingCardinalityError(
            f"{kind} training queries of dataset '{d.id}' lack true cardinalities"
        )
    featurizer = QueryFeaturizer(d)
    x = featurizer.encode_many(train)
    y = np.log(np.maximum([q.true_card for q in train], 1).astype(np.float64))
    return featurizer, x, y


@register_estimator
class QdLinear(CardEstimator):
    """Ridge regression on encoded queries, intercept unpenalized."""

    kind = "qd-linear"
    family = "query_driven"
    defaults = {"alpha": 1.0}

    def _fit(self, d: Dataset, train: Sequence[Query]) -> None:
        self.featurizer, x, y = _training_set(self.kind, d, train)
        x_mean, y_mean = x.mean(axis=0), float(y.mean())
        xc = x - x_mean
        gram = xc.T @ xc + float(self.hp["alpha"]) * np.eye(x.shape[1])
        self.coef = np.linalg.solve(gram, xc.T @ (y - y_mean))
        self.intercept = y_mean - float(x_mean @ self.coef)

    def _estimate(self, q: Query) -> tuple[float, int]:
        x = self.featurizer.encode(q)
        log_card = float(x @ self.coef) + self.intercept
        return float(np.exp(min(log_card, MAX_LOG_CARD))), x.shape[0]


@register_estimator
class QdMlp(CardEstimator):
    """Two hidden ReLU layers on standardized query encodings."""

    kind = "qd-mlp"
    family = "query_driven"
    defaults = {
        "hidden1": 64,
        "hidden2": 32,
        "epochs": 100,
        "lr": 0.01,
        "batch_size": 32,
        "seed": 0,
    }

    def _fit(self, d: Dataset, train: Sequence[Query]) -> None:
        self.featurizer, x, y = _training_set(self.kind, d, train)
        self.x_mean = x.mean(axis=0)
        self.x_scale = np.where(x.std(axis=0) > 0, x.std(axis=0), 1.0)
        self.y_mean = float(y.mean())
        self.y_scale = float(y.std()) or 1.0
        xs = (x - self.x_mean) / self.x_scale
        ys = ((y - self.y_mean) / self.y_scale)[:, None]

        rng = np.random.default_rng(int(self.hp["seed"]))
        sizes = [x.shape[1], int(self.hp["hidden1"]), int(self.hp["hidden2"]), 1]
        self.net = MLP(sizes, rng)
        batch, lr = int(self.hp["batch_size"]), float(self.hp["lr"])
        loss = float("nan")
        for _ in range(int(self.hp["epochs"])):
            order = rng.permutation(xs.shape[0])
            for start in range(0, xs.shape[0], batch):
                idx = order[start : start + batch]
                pred, memory = self.net.forward(xs[idx])
                loss, upstream = mse_loss(pred, ys[idx])
                grads, _ = self.net.backward(memory, upstream)
                sgd_step(self.net.params, grads, lr)
        logger.debug("qd-mlp on %s: final batch loss %.4f", d.id, loss)

    def _estimate(self, q: Query) -> tuple[float, int]:
        x = (self.featurizer.encode(q) - self.x_mean) / self.x_scale
        pred = float(self.net.predict(x[None, :])[0, 0])
        log_card = pred * self.y_scale + self.y_mean
        return float(np.exp(min(log_card, MAX_LOG_CARD))), self.net.multiply_adds
