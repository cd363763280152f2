"""
GIN encoder with a classification head, trained end to end with
cross-entropy on the index of each dataset's best estimator.
"""

import logging
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from apps.dml.domain.models import DmlConfig
from apps.encoder.domain.models import EncoderConfig
from apps.encoder.domain.services import (
    MLP,
    GINEncoder,
    sgd_step,
    softmax_cross_entropy,
)
from apps.featurizer.domain.models import FeatureGraph

from .selectors import SelectionError

logger = logging.getLogger(__name__)

HEAD_HIDDEN = (64, 32)


@dataclass
class MlpSelector:
    encoder: GINEncoder
    head: MLP
    estimator_ids: tuple[str, ...]

    def predict(self, graphs: Sequence[FeatureGraph]) -> list[str]:
        logits = self.head.predict(self.encoder.encode_many(graphs))
        return [self.estimator_ids[int(i)] for i in np.argmax(logits, axis=1)]

    def select(self, g: FeatureGraph) -> str:
        return self.predict([g])[0]


def train_mlp_selector(
    graphs: Sequence[FeatureGraph],
    labels: np.ndarray,
    estimator_ids: Sequence[str],
    cfg: DmlConfig,
    encoder_cfg: EncoderConfig | None = None,
) -> MlpSelector:
    """
    Train encoder and head with the SGD settings of ``cfg``.

    ``labels`` holds one score vector per graph; its argmax is the class.

    Raises:
        SelectionError: On an empty corpus, misaligned labels or a diverging loss
    """
    if not graphs:
        raise SelectionError("Cannot train an MLP selector on no graphs")
    if labels.shape != (len(graphs), len(estimator_ids)):
        raise SelectionError(
            f"Labels of shape {labels.shape} for {len(graphs)} graphs and "
            f"{len(estimator_ids)} estimators"
        )
    enc_cfg = encoder_cfg or EncoderConfig()
    encoder = GINEncoder(enc_cfg, graphs[0].feature_dim)
    head = MLP(
        [enc_cfg.embed_dim, *HEAD_HIDDEN, len(estimator_ids)],
        np.random.default_rng([enc_cfg.init_seed, 2]),
    )
    classes = np.argmax(labels, axis=1)
    batch = min(cfg.batch_size, len(graphs))
    rng = np.random.default_rng(cfg.seed)
    for epoch in range(cfg.epochs):
        losses = []
        order = rng.permutation(len(graphs))
        for start in range(0, len(graphs), batch):
            idx = order[start : start + batch]
            x = encoder.forward([graphs[i] for i in idx])
            logits, memory = head.forward(x)
            loss, dlogits = softmax_cross_entropy(logits, classes[idx])
            if not np.isfinite(loss):
                raise SelectionError(f"MLP selector loss diverged in epoch {epoch}")
            head_grads, dx = head.backward(memory, dlogits)
            sgd_step(encoder.params, encoder.backward(dx), cfg.lr)
            sgd_step(head.params, head_grads, cfg.lr)
            losses.append(loss)
        logger.debug("MLP selector epoch %d: loss %.6f", epoch, float(np.mean(losses)))
    return MlpSelector(encoder=encoder, head=head, estimator_ids=tuple(estimator_ids))
