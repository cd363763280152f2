"""
Mixup augmentation of feature graphs and incremental encoder training.
"""

import logging
from collections.abc import Sequence

import numpy as np

from apps.dml.domain.models import DmlConfig
from apps.dml.domain.services import train_encoder
from apps.encoder.domain.services import GINEncoder
from apps.featurizer.domain.models import FeatureGraph

from ..models import FeedbackSplit, IncrementalConfig, IncrementalResult
from .feedback_service import IncrementalError, collect_feedback

logger = logging.getLogger(__name__)


def mixup(
    g_i: FeatureGraph,
    y_i: np.ndarray,
    g_j: FeatureGraph,
    y_j: np.ndarray,
    lam: float,
) -> tuple[FeatureGraph, np.ndarray]:
    """
    Convex combination ``lam * i + (1 - lam) * j`` of two graphs and their
    labels, the smaller graph padded with zero vertices.
    """
    if not 0.0 <= lam <= 1.0:
        raise IncrementalError(f"Mixup weight must lie in [0, 1], got {lam}")
    n = max(g_i.n_vertices, g_j.n_vertices)
    a, b = g_i.padded(n), g_j.padded(n)
    g = FeatureGraph(
        V=lam * a.V + (1.0 - lam) * b.V,
        E=lam * a.E + (1.0 - lam) * b.E,
        dataset_id=f"mix:{g_i.dataset_id}:{g_j.dataset_id}",
    )
    return g, lam * np.asarray(y_i) + (1.0 - lam) * np.asarray(y_j)


def synthesize(
    graphs: Sequence[FeatureGraph],
    labels: np.ndarray,
    embeddings: np.ndarray,
    split: FeedbackSplit,
    cfg: IncrementalConfig,
) -> tuple[list[FeatureGraph], np.ndarray]:
    """
    One Mixup sample per feedback dataset, mixed with its nearest reference
    dataset in embedding space at ``lam ~ Beta(alpha, beta)``.

    Raises:
        IncrementalError: If there is feedback but no reference dataset
    """
    if not split.feedback:
        return [], np.zeros((0, labels.shape[1]))
    if not split.reference:
        raise IncrementalError(
            "Every dataset is poorly predicted; use a larger corpus or a looser "
            "D-error threshold"
        )
    rng = np.random.default_rng([cfg.seed, 1])
    reference = np.asarray(split.reference)
    out_graphs, out_labels = [], []
    for i in split.feedback:
        distances = np.linalg.norm(embeddings[reference] - embeddings[i], axis=1)
        j = int(reference[int(np.argmin(distances))])
        lam = float(rng.beta(cfg.alpha, cfg.beta))
        g, y = mixup(graphs[i], labels[i], graphs[j], labels[j], lam)
        out_graphs.append(g)
        out_labels.append(y)
    return out_graphs, np.vstack(out_labels)


def incremental_train(
    graphs: Sequence[FeatureGraph],
    labels: np.ndarray,
    encoder: GINEncoder,
    estimator_ids: Sequence[str],
    cfg: IncrementalConfig,
    dml: DmlConfig,
    n_jobs: int = 1,
) -> IncrementalResult:
    """
    Fine-tune ``encoder`` on the corpus plus Mixup samples for its feedback
    datasets, then re-run cross-validation. With ``cfg.augment`` off the
    fine-tuning sees the corpus alone.

    Unless ``cfg.keep_if_worse`` is set, a fine-tuned encoder whose mean
    cross-validation D-error is higher than before is discarded. Corpus graphs
    and labels are never modified.

    Raises:
        IncrementalError: As ``collect_feedback`` and ``synthesize``
    """
    before = collect_feedback(graphs, labels, encoder, estimator_ids, cfg, n_jobs)
    if not before.feedback:
        logger.info("No feedback datasets; encoder unchanged")
        return IncrementalResult(
            encoder=encoder, before=before, after=before, n_synthetic=0, accepted=False
        )

    synthetic: list[FeatureGraph] = []
    synthetic_labels = np.zeros((0, labels.shape[1]))
    if cfg.augment:
        synthetic, synthetic_labels = synthesize(
            graphs, labels, encoder.encode_many(graphs), before, cfg
        )
    train_graphs = [*graphs, *synthetic]
    train_labels = np.vstack([labels, synthetic_labels])
    tune = dml.model_copy(
        update={
            "epochs": cfg.extra_epochs,
            "batch_size": min(dml.batch_size, len(train_graphs)),
        }
    )
    tuned = train_encoder(train_graphs, train_labels, tune, encoder=encoder).encoder

    after = collect_feedback(graphs, labels, tuned, estimator_ids, cfg, n_jobs)
    accepted = cfg.keep_if_worse or after.mean_derror <= before.mean_derror
    logger.info(
        "Incremental training on %d synthetic samples: D-error %.4f -> %.4f (%s)",
        len(synthetic), before.mean_derror, after.mean_derror,
        "kept" if accepted else "reverted",
    )
    return IncrementalResult(
        encoder=tuned if accepted else encoder,
        before=before,
        after=after,
        n_synthetic=len(synthetic),
        accepted=accepted,
    )


WITHOUT_IL = "without-il"
NO_AUGMENTATION = "no-augmentation"
MIXUP = "mixup"
VARIANTS = (WITHOUT_IL, NO_AUGMENTATION, MIXUP)


def compare_variants(
    graphs: Sequence[FeatureGraph],
    labels: np.ndarray,
    encoder: GINEncoder,
    estimator_ids: Sequence[str],
    cfg: IncrementalConfig,
    dml: DmlConfig,
    n_jobs: int = 1,
) -> dict[str, float]:
    """
    Mean cross-validation D-error of ``encoder`` as is, fine-tuned without
    augmentation and fine-tuned with Mixup samples. Fine-tuned encoders are
    scored whether or not they regressed.
    """
    out: dict[str, float] = {}
    for name, augment in ((NO_AUGMENTATION, False), (MIXUP, True)):
        variant = cfg.model_copy(update={"augment": augment, "keep_if_worse": True})
        result = incremental_train(
            graphs, labels, encoder, estimator_ids, variant, dml, n_jobs
        )
        out.setdefault(WITHOUT_IL, result.before.mean_derror)
        out[name] = result.after.mean_derror
    return {name: out[name] for name in VARIANTS}
