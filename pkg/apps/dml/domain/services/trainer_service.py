"""
Mini-batch SGD training of the graph encoder under a contrastive loss.
"""

import logging
from collections.abc import Mapping, Sequence
from pathlib import Path

import numpy as np
import pandas as pd

from apps.corpus.domain.models import LabelRecord
from apps.encoder.domain.models import EncoderConfig
from apps.encoder.domain.services import GINEncoder, sgd_step
from apps.estimators.domain.services import EstimatorError, score_vector
from apps.featurizer.domain.models import FeatureGraph

from ..models import DmlConfig, EpochStats, TrainingResult
from .loss_service import (
    TrainingError,
    basic_contrastive_loss,
    positive_ratio,
    weighted_contrastive_loss,
)

logger = logging.getLogger(__name__)

LOSSES = {"weighted": weighted_contrastive_loss, "basic": basic_contrastive_loss}


def labeled_ids(
    records_by_dataset: Mapping[str, Sequence[LabelRecord]],
    estimator_ids: Sequence[str],
) -> list[str]:
    """Datasets holding a record for every estimator in ``estimator_ids``."""
    wanted = set(estimator_ids)
    complete = []
    for dataset_id, records in records_by_dataset.items():
        if wanted <= {r.estimator_id for r in records}:
            complete.append(dataset_id)
        else:
            logger.warning("Dataset %s lacks labels for some estimators", dataset_id)
    return complete


def label_matrix(
    records_by_dataset: Mapping[str, Sequence[LabelRecord]],
    dataset_ids: Sequence[str],
    estimator_ids: Sequence[str],
    w_a: float,
) -> np.ndarray:
    """
    Score vectors at ``w_a`` as rows, in ``dataset_ids`` order.

    Raises:
        TrainingError: If a dataset lacks labels
    """
    rows = []
    for dataset_id in dataset_ids:
        try:
            records = records_by_dataset[dataset_id]
            rows.append(score_vector(records, w_a, estimator_ids).scores)
        except (KeyError, EstimatorError) as e:
            raise TrainingError(
                f"No usable labels for dataset {dataset_id}: {e}"
            ) from e
    return np.vstack(rows) if rows else np.zeros((0, len(estimator_ids)))


def train_encoder(
    graphs: Sequence[FeatureGraph],
    labels: np.ndarray,
    cfg: DmlConfig,
    encoder_cfg: EncoderConfig | None = None,
    encoder: GINEncoder | None = None,
) -> TrainingResult:
    """
    Train a GIN encoder so that datasets with similar score vectors embed
    close together.

    Each epoch shuffles the graphs with a generator seeded by ``cfg.seed`` and
    walks ``ceil(n / m)`` batches; a trailing batch of one graph is skipped.

    Args:
        encoder: Starting point for fine-tuning; it is copied, not mutated.
            A fresh encoder is built from ``encoder_cfg`` when omitted.

    Raises:
        TrainingError: If there are fewer graphs than ``cfg.batch_size`` or
            labels do not line up with graphs
    """
    n = len(graphs)
    if n < cfg.batch_size:
        raise TrainingError(
            f"Training needs at least batch_size={cfg.batch_size} graphs, got {n}"
        )
    if labels.shape[0] != n:
        raise TrainingError(f"{labels.shape[0]} label rows for {n} graphs")

    model = (
        encoder.copy()
        if encoder is not None
        else GINEncoder(encoder_cfg or EncoderConfig(), graphs[0].feature_dim)
    )
    loss_fn = LOSSES[cfg.loss]
    rng = np.random.default_rng(cfg.seed)
    trace: list[EpochStats] = []
    for epoch in range(cfg.epochs):
        order = rng.permutation(n)
        losses, ratios = [], []
        for start in range(0, n, cfg.batch_size):
            idx = order[start : start + cfg.batch_size]
            if idx.shape[0] < 2:
                continue
            x = model.forward([graphs[i] for i in idx])
            loss, upstream = loss_fn(x, labels[idx], cfg)
            sgd_step(model.params, model.backward(upstream), cfg.lr)
            losses.append(loss)
            ratios.append(positive_ratio(labels[idx], cfg.tau))
        stats = EpochStats(epoch, float(np.mean(losses)), float(np.mean(ratios)))
        trace.append(stats)
        logger.debug(
            "w_a=%.2f epoch %d: loss %.5f, positive ratio %.3f",
            cfg.w_a, epoch, stats.loss, stats.positive_ratio,
        )
    if not all(np.all(np.isfinite(p)) for p in model.params.values()):
        raise TrainingError("Training diverged to non-finite parameters; lower lr")
    logger.info(
        "Trained %s-loss encoder for w_a=%.2f on %d graphs: final loss %.5f",
        cfg.loss, cfg.w_a, n, trace[-1].loss,
    )
    return TrainingResult(encoder=model, trace=trace)


def loss_trace_filename(w_a: float) -> str:
    return f"loss_trace_wa_{w_a:.2f}.csv"


def write_loss_trace(path: Path | str, trace: Sequence[EpochStats]) -> Path:
    target = Path(path)
    frame = pd.DataFrame(
        {
            "epoch": [s.epoch for s in trace],
            "loss": [s.loss for s in trace],
            "positive_ratio": [s.positive_ratio for s in trace],
        }
    )
    target.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(target, index=False, lineterminator="\n")
    return target
