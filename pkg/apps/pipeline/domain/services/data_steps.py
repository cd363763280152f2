"""
Corpus generation, workload generation and labeling over a run directory.
"""

import logging
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from joblib import Parallel, delayed

from apps.corpus.domain.models import Dataset, LabelRecord, LatencyUnit
from apps.corpus.domain.services import LabelStore, load_dataset, save_dataset
from apps.datagen.domain.services import gen_corpus, gen_regime_corpus
from apps.estimators.domain.models import EstimatorSpec, LabelFailure
from apps.estimators.domain.services import label_dataset
from apps.workload.domain.models import WorkloadParams
from apps.workload.domain.services import (
    WORKLOAD_FILE,
    gen_workload,
    load_workload,
    save_workload,
)

from ..models import RunConfig
from .layout import RunLayout, Split

logger = logging.getLogger(__name__)

SPLITS: tuple[Split, ...] = ("train", "test")


def generate_datasets(cfg: RunConfig) -> tuple[list[Dataset], list[Dataset]]:
    """
    Draw ``n_train + n_test`` datasets as one corpus, so every dataset has its
    own derived seed, and split them in index order.
    """
    spec = cfg.corpus
    seed = cfg.seed or 0
    n = spec.n_train + spec.n_test
    if spec.regimes:
        corpus = gen_regime_corpus(
            n, seed, rows_range=spec.rows_range, n_jobs=cfg.jobs or 1
        )
    else:
        params = spec.gen.model_copy(update={"seed": seed})
        corpus = gen_corpus(params, n, n_jobs=cfg.jobs or 1)
    return corpus[: spec.n_train], corpus[spec.n_train :]


def gen_data(cfg: RunConfig) -> dict[Split, list[Path]]:
    """Generate the train and test corpora into the run directory."""
    layout = RunLayout.of(cfg)
    train, test = generate_datasets(cfg)
    written: dict[Split, list[Path]] = {}
    for split, corpus in zip(SPLITS, (train, test), strict=True):
        written[split] = []
        for d in corpus:
            target = layout.split_dir(split) / d.id
            save_dataset(d, target)
            written[split].append(target)
    logger.info("Wrote %d train and %d test datasets", len(train), len(test))
    return written


def _workload_job(
    directory: Path, params: WorkloadParams, seed: list[int]
) -> int:
    d = load_dataset(directory)
    w = gen_workload(
        d, params.n_train, params.n_test, params.pred_prob, np.random.default_rng(seed)
    )
    save_workload(w, directory / WORKLOAD_FILE)
    return len(w.train) + len(w.test)


def gen_workloads(cfg: RunConfig) -> int:
    """
    Write a labeled workload next to every dataset. Dataset ``i`` of split
    ``s`` draws from the seed sequence ``[seed, s, i]``.
    """
    layout = RunLayout.of(cfg)
    jobs = [
        (directory, [cfg.seed or 0, s, i])
        for s, split in enumerate(SPLITS)
        for i, directory in enumerate(layout.dataset_dirs(split))
    ]
    counts = Parallel(n_jobs=cfg.jobs or 1)(
        delayed(_workload_job)(directory, cfg.workload, seed)
        for directory, seed in jobs
    )
    total = int(sum(counts))
    logger.info("Generated %d queries over %d datasets", total, len(jobs))
    return total


@dataclass
class LabelingSummary:
    labeled: list[str] = field(default_factory=list)
    skipped: list[str] = field(default_factory=list)
    failures: dict[str, list[LabelFailure]] = field(default_factory=dict)
    seconds: dict[str, float] = field(default_factory=dict)


def _label_job(
    directory: Path, pool: list[EstimatorSpec], unit: LatencyUnit
) -> tuple[str, list[LabelRecord], list[LabelFailure], float]:
    start = time.perf_counter()
    d = load_dataset(directory)
    result = label_dataset(d, pool, load_workload(directory / WORKLOAD_FILE), unit)
    return d.id, result.records, result.failures, time.perf_counter() - start


def label_corpus(cfg: RunConfig, force: bool = False) -> LabelingSummary:
    """
    Label every dataset of the run with the pool and append to the label
    store. Datasets that already hold a record per pool member are skipped
    unless ``force`` is set.
    """
    layout = RunLayout.of(cfg)
    store = LabelStore(layout.labels)
    existing = store.by_dataset()
    wanted = set(cfg.estimator_ids)
    summary = LabelingSummary()
    todo = []
    for split in SPLITS:
        for directory in layout.dataset_dirs(split):
            done = {r.estimator_id for r in existing.get(directory.name, [])}
            if not force and wanted <= done:
                summary.skipped.append(directory.name)
            else:
                todo.append(directory)

    results = Parallel(n_jobs=cfg.jobs or 1)(
        delayed(_label_job)(directory, cfg.pool, cfg.latency_unit or "cost")
        for directory in todo
    )
    for dataset_id, records, failures, seconds in results:
        store.append(records)
        summary.labeled.append(dataset_id)
        summary.seconds[dataset_id] = seconds
        if failures:
            summary.failures[dataset_id] = failures
    logger.info(
        "Labeled %d datasets (%d skipped, %d with failures)",
        len(summary.labeled), len(summary.skipped), len(summary.failures),
    )
    return summary


def load_split(cfg: RunConfig, split: Split) -> list[Dataset]:
    return [load_dataset(p) for p in RunLayout.of(cfg).dataset_dirs(split)]


def load_labels(cfg: RunConfig) -> dict[str, list[LabelRecord]]:
    return LabelStore(RunLayout.of(cfg).labels).by_dataset()
