"""
Encoder training, RCS assembly and the advisor-side commands.
"""

import logging
import math
import time
from collections.abc import Sequence
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from apps.advisor.domain.models import RCS, DriftReport, Recommendation
from apps.advisor.domain.services import (
    build_rcs,
    check_drift,
    online_adapt,
    recommend,
)
from apps.corpus.domain.models import Dataset, LabelRecord
from apps.corpus.domain.services import LabelStore, load_dataset, save_dataset
from apps.dml.domain.models import LossKind
from apps.dml.domain.services import (
    ModelStore,
    label_matrix,
    labeled_ids,
    loss_trace_filename,
    train_encoder,
    write_loss_trace,
)
from apps.encoder.domain.services import TrainedEncoder
from apps.featurizer.domain.services import featurize_corpus, fit_normalization
from apps.incremental.domain.models import IncrementalResult
from apps.incremental.domain.services import (
    compare_variants,
    incremental_train,
    write_ablation,
    write_report,
)
from apps.workload.domain.services import WORKLOAD_FILE, save_workload

from ..models import RunConfig
from .config_service import PipelineError
from .data_steps import load_labels, load_split
from .layout import RunLayout

logger = logging.getLogger(__name__)


def labeled_train_corpus(
    cfg: RunConfig,
) -> tuple[list[Dataset], dict[str, list[LabelRecord]]]:
    """
    Training datasets holding a label for every pool member, with their
    records.

    Raises:
        PipelineError: If fewer than two training datasets are labeled
    """
    records = load_labels(cfg)
    complete = set(labeled_ids(records, cfg.estimator_ids))
    corpus = [d for d in load_split(cfg, "train") if d.id in complete]
    if len(corpus) < 2:
        raise PipelineError(
            f"Need at least 2 labeled training datasets under "
            f"{RunLayout.of(cfg).root}, found {len(corpus)}; run gen-data, "
            f"gen-workload and label first"
        )
    return corpus, records


@dataclass(frozen=True)
class TrainedWeight:
    w_a: float
    model_path: Path
    trace_path: Path
    final_loss: float
    seconds: float


def train(
    cfg: RunConfig, weights: Sequence[float], loss: LossKind = "weighted"
) -> list[TrainedWeight]:
    """
    Train one encoder per accuracy weight on the labeled training corpus and
    store it with its loss trace. The feature layout is fitted once and
    shared by every weight.
    """
    layout = RunLayout.of(cfg)
    corpus, records = labeled_train_corpus(cfg)
    features = fit_normalization(corpus, cfg.jobs or 1)
    graphs = featurize_corpus(corpus, features, cfg.jobs or 1)
    ids = [d.id for d in corpus]
    store = ModelStore(layout.models(loss))

    trained = []
    for w_a in weights:
        start = time.perf_counter()
        labels = label_matrix(records, ids, cfg.estimator_ids, w_a)
        dml = cfg.dml.model_copy(
            update={
                "w_a": w_a,
                "loss": loss,
                "batch_size": min(cfg.dml.batch_size, len(graphs)),
            }
        )
        result = train_encoder(graphs, labels, dml, cfg.encoder)
        model_path = store.save(TrainedEncoder(result.encoder, features, w_a))
        trace_path = write_loss_trace(
            store.root / loss_trace_filename(w_a), result.trace
        )
        trained.append(
            TrainedWeight(
                w_a=w_a,
                model_path=model_path,
                trace_path=trace_path,
                final_loss=result.trace[-1].loss,
                seconds=time.perf_counter() - start,
            )
        )
    return trained


def load_rcs(cfg: RunConfig, w_a: float, loss: LossKind = "weighted") -> RCS:
    """The labeled training corpus embedded by the encoder nearest ``w_a``."""
    model = ModelStore(RunLayout.of(cfg).models(loss)).nearest(w_a)
    corpus, records = labeled_train_corpus(cfg)
    return build_rcs(corpus, model, records, cfg.estimator_ids, cfg.jobs or 1)


def recommend_dataset(
    cfg: RunConfig, directory: Path | str, w_a: float, k: int | None = None
) -> Recommendation:
    d = load_dataset(directory)
    return recommend(d, load_rcs(cfg, w_a), k or cfg.advisor.k, w_a)


@dataclass(frozen=True)
class DriftOutcome:
    report: DriftReport
    adapted_model: Path | None = None


def drift_check(
    cfg: RunConfig,
    directory: Path | str,
    w_a: float,
    threshold: float | None = None,
    adapt: bool = False,
) -> DriftOutcome:
    """
    Check a dataset against the RCS. With ``adapt``, a drifted dataset is
    labeled, joins the training split and the encoder for ``w_a`` is
    fine-tuned for ``incremental.extra_epochs`` epochs and replaced.
    """
    layout = RunLayout.of(cfg)
    d = load_dataset(directory)
    rcs = load_rcs(cfg, w_a)
    report = check_drift(d, rcs, threshold)
    if not (adapt and report.drift):
        return DriftOutcome(report)

    target = layout.split_dir("train") / d.id
    if target.exists():
        raise PipelineError(f"Training split already holds a dataset '{d.id}'")
    dml = cfg.dml.model_copy(
        update={"w_a": rcs.model.w_a, "epochs": cfg.incremental.extra_epochs}
    )
    result = online_adapt(
        d, rcs, cfg.pool, cfg.workload, dml,
        seed=cfg.seed or 0, unit=cfg.latency_unit or "cost",
    )
    save_dataset(d, target)
    save_workload(result.workload, target / WORKLOAD_FILE)
    LabelStore(layout.labels).append(result.records)
    path = ModelStore(layout.models()).save(result.model)
    logger.info("Adapted encoder for w_a=%.2f saved to %s", result.model.w_a, path)
    return DriftOutcome(report, adapted_model=path)


@dataclass(frozen=True)
class CrossTrainOutcome:
    result: IncrementalResult
    report_path: Path
    model_path: Path | None


def cross_train(cfg: RunConfig, w_a: float) -> CrossTrainOutcome:
    """
    Incremental training of the stored encoder nearest ``w_a``. The encoder
    file is replaced only when the fine-tuned encoder is kept.
    """
    layout = RunLayout.of(cfg)
    store = ModelStore(layout.models())
    model = store.nearest(w_a)
    corpus, records = labeled_train_corpus(cfg)
    ids = [d.id for d in corpus]
    graphs = featurize_corpus(corpus, model.features, cfg.jobs or 1)
    labels = label_matrix(records, ids, cfg.estimator_ids, model.w_a)
    result = incremental_train(
        graphs,
        labels,
        model.encoder,
        cfg.estimator_ids,
        cfg.incremental,
        cfg.dml.model_copy(update={"w_a": model.w_a}),
        cfg.jobs or 1,
    )
    model_path = None
    if result.accepted:
        model_path = store.save(
            TrainedEncoder(result.encoder, model.features, model.w_a)
        )
    report_path = write_report(layout.incremental_report(model.w_a), result, ids)
    return CrossTrainOutcome(result, report_path, model_path)


@dataclass(frozen=True)
class AblationOutcome:
    rows: list[dict[str, object]]
    path: Path


def il_ablation(
    cfg: RunConfig, w_a: float, fractions: Sequence[float]
) -> AblationOutcome:
    """
    Compare incremental learning variants on growing shares of the labeled
    training split. Each share gets its own layout and freshly trained
    encoder, which the variants then fine-tune.

    Raises:
        PipelineError: If the split holds fewer datasets than folds
    """
    layout = RunLayout.of(cfg)
    corpus, records = labeled_train_corpus(cfg)
    folds = cfg.incremental.folds
    if len(corpus) < folds:
        raise PipelineError(
            f"{folds}-fold validation needs {folds} labeled training datasets, "
            f"found {len(corpus)}"
        )
    jobs = cfg.jobs or 1
    order = np.random.default_rng([cfg.seed or 0, 5]).permutation(len(corpus))
    rows: list[dict[str, object]] = []
    for fraction in fractions:
        n = min(len(corpus), max(folds, math.ceil(fraction * len(corpus))))
        subset = [corpus[i] for i in sorted(order[:n])]
        features = fit_normalization(subset, jobs)
        graphs = featurize_corpus(subset, features, jobs)
        labels = label_matrix(records, [d.id for d in subset], cfg.estimator_ids, w_a)
        dml = cfg.dml.model_copy(
            update={"w_a": w_a, "batch_size": min(cfg.dml.batch_size, n)}
        )
        encoder = train_encoder(graphs, labels, dml, cfg.encoder).encoder
        scores = compare_variants(
            graphs, labels, encoder, cfg.estimator_ids, cfg.incremental, dml, jobs
        )
        logger.info(
            "Incremental variants on %d datasets (%.0f%%): %s",
            n, 100.0 * fraction,
            ", ".join(f"{v} {s:.4f}" for v, s in scores.items()),
        )
        rows.extend(
            {"fraction": fraction, "n_datasets": n, "variant": v, "mean_derror": s}
            for v, s in scores.items()
        )
    return AblationOutcome(rows, write_ablation(layout.incremental_ablation(w_a), rows))
