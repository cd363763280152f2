"""
Strategy comparison on the held-out split and the end-to-end bench.
"""

import logging
import time
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
import pandas as pd

from apps.advisor.domain.models import RCS
from apps.advisor.domain.services import build_rcs, recommend
from apps.baselines.domain.models import EvalReport
from apps.baselines.domain.services import (
    Candidate,
    EnsembleCandidate,
    MlpSelector,
    RawKnnSelector,
    SamplingSelector,
    Strategy,
    evaluate,
    oracle_select,
    rule_select,
    summary_frame,
    train_mlp_selector,
    write_eval_report,
)
from apps.corpus.domain.models import Dataset, LabelRecord
from apps.dml.domain.models import LossKind
from apps.dml.domain.services import ModelStore, label_matrix
from apps.featurizer.domain.models import FeatureConfig
from apps.featurizer.domain.services import (
    build_feature_graph,
    featurize_corpus,
    fit_normalization,
)
from apps.workload.domain.models import Workload
from apps.workload.domain.services import WORKLOAD_FILE, load_workload

from ..models import FIXED_PREFIX, SWEEP_PREFIX, RunConfig
from .config_service import PipelineError
from .data_steps import gen_data, gen_workloads, label_corpus, load_labels, load_split
from .layout import RunLayout
from .model_steps import il_ablation, labeled_train_corpus, train

logger = logging.getLogger(__name__)

ABLATION_STRATEGY = "advisor-basic"
LEARNING_ALL = "learning-all"
K_SWEEP_FILE = "k_sweep.csv"


def expand_strategies(names: Sequence[str], estimator_ids: Sequence[str]) -> list[str]:
    """``fixed`` becomes one ``fixed:<id>`` per pool member; order is kept."""
    out: list[str] = []
    for name in names:
        if name == "fixed":
            out.extend(f"{FIXED_PREFIX}{i}" for i in estimator_ids)
        else:
            out.append(name)
    return list(dict.fromkeys(out))


def _rcs_by_weight(
    cfg: RunConfig,
    weights: Sequence[float],
    corpus: Sequence[Dataset],
    records: dict[str, list[LabelRecord]],
    loss: LossKind,
) -> dict[float, RCS]:
    store = ModelStore(RunLayout.of(cfg).models(loss))
    return {
        w_a: build_rcs(
            corpus, store.nearest(w_a), records, cfg.estimator_ids, cfg.jobs or 1
        )
        for w_a in weights
    }


def _advisor(rcs: dict[float, RCS], k: int) -> Strategy:
    def select(d: Dataset, w_a: float) -> str:
        return recommend(d, rcs[w_a], k, w_a).chosen

    return select


def _mlp(
    cfg: RunConfig,
    weights: Sequence[float],
    corpus: Sequence[Dataset],
    records: dict[str, list[LabelRecord]],
    features: FeatureConfig,
) -> Strategy:
    graphs = featurize_corpus(corpus, features, cfg.jobs or 1)
    ids = [d.id for d in corpus]
    epochs = cfg.evaluation.mlp_epochs or cfg.dml.epochs
    selectors: dict[float, MlpSelector] = {}
    for w_a in weights:
        labels = label_matrix(records, ids, cfg.estimator_ids, w_a)
        dml = cfg.dml.model_copy(update={"w_a": w_a, "epochs": epochs})
        selectors[w_a] = train_mlp_selector(
            graphs, labels, cfg.estimator_ids, dml, cfg.encoder
        )

    def select(d: Dataset, w_a: float) -> str:
        return selectors[w_a].select(build_feature_graph(d, features))

    return select


def _fixed(estimator_id: str) -> Strategy:
    return lambda d, w_a: estimator_id


def _test_workloads(cfg: RunConfig) -> Callable[[Dataset], Workload]:
    directory = RunLayout.of(cfg).split_dir("test")
    return lambda d: load_workload(directory / d.id / WORKLOAD_FILE)


@dataclass
class StrategySet:
    """Pool-member selectors and the estimators scored beside the pool."""

    strategies: dict[str, Strategy] = field(default_factory=dict)
    candidates: dict[str, Candidate] = field(default_factory=dict)

    @property
    def names(self) -> list[str]:
        return [*self.strategies, *self.candidates]


def build_strategies(
    cfg: RunConfig,
    names: Sequence[str],
    weights: Sequence[float],
    sweep: Sequence[int] = (),
) -> StrategySet:
    """
    Selection strategies by name, every learned one trained on the labeled
    training split before any timing starts. Each ``k`` of ``sweep`` adds an
    ``advisor@<k>`` strategy; values above the corpus size are skipped.

    Raises:
        PipelineError: On an unknown name, a fixed strategy outside the pool
            or an ``advisor@<k>`` with more neighbors than training datasets
    """
    corpus, records = labeled_train_corpus(cfg)
    features = fit_normalization(corpus, cfg.jobs or 1)
    seed = cfg.seed or 0
    unit = cfg.latency_unit or "cost"
    wanted = expand_strategies(names, cfg.estimator_ids)
    usable = [k for k in sweep if k <= len(corpus)]
    if len(usable) < len(sweep):
        logger.warning(
            "Skipping swept k above the %d labeled training datasets", len(corpus)
        )
    for k in usable:
        if f"{SWEEP_PREFIX}{k}" not in wanted:
            wanted.append(f"{SWEEP_PREFIX}{k}")

    rcs_cache: dict[LossKind, dict[float, RCS]] = {}

    def rcs(loss: LossKind) -> dict[float, RCS]:
        if loss not in rcs_cache:
            rcs_cache[loss] = _rcs_by_weight(cfg, weights, corpus, records, loss)
        return rcs_cache[loss]

    out = StrategySet()
    for name in wanted:
        if name == "advisor":
            out.strategies[name] = _advisor(rcs("weighted"), cfg.advisor.k)
        elif name == ABLATION_STRATEGY:
            out.strategies[name] = _advisor(rcs("basic"), cfg.advisor.k)
        elif name.startswith(SWEEP_PREFIX):
            k = int(name[len(SWEEP_PREFIX) :])
            if k > len(corpus):
                raise PipelineError(
                    f"{name} needs {k} labeled training datasets, found {len(corpus)}"
                )
            out.strategies[name] = _advisor(rcs("weighted"), k)
        elif name == "mlp":
            out.strategies[name] = _mlp(cfg, weights, corpus, records, features)
        elif name == "rule":
            rng = np.random.default_rng([seed, 3])
            out.strategies[name] = lambda d, w_a: rule_select(d, cfg.pool, rng)
        elif name == "rawknn":
            knn = RawKnnSelector.build(corpus, features, records, cfg.estimator_ids)
            out.strategies[name] = lambda d, w_a: knn.select(d, w_a, cfg.advisor.k)
        elif name in ("sampling", LEARNING_ALL):
            rate = cfg.evaluation.sample_rate if name == "sampling" else 1.0
            out.strategies[name] = SamplingSelector(
                cfg.pool, cfg.workload, rate, seed, unit
            ).select
        elif name.startswith(FIXED_PREFIX):
            estimator_id = name[len(FIXED_PREFIX) :]
            if estimator_id not in cfg.estimator_ids:
                raise PipelineError(f"Strategy {name} names no pool member")
            out.strategies[name] = _fixed(estimator_id)
        elif name == "ensemble":
            out.candidates[name] = EnsembleCandidate(
                cfg.pool, _test_workloads(cfg), records, [d.id for d in corpus], unit
            ).record
        elif name == "oracle":
            all_records = load_labels(cfg)
            out.strategies[name] = lambda d, w_a: oracle_select(
                all_records[d.id], w_a, cfg.estimator_ids
            )
        else:
            raise PipelineError(f"Unknown strategy '{name}'")
    return out


@dataclass
class EvalOutcome:
    report: EvalReport
    paths: list[Path]


def k_sweep_frame(report: EvalReport) -> pd.DataFrame:
    """Summary rows of the ``advisor@<k>`` strategies, by k then w_a."""
    frame = summary_frame(report)
    if frame.empty:
        return frame
    swept = frame[frame["strategy"].str.startswith(SWEEP_PREFIX)].copy()
    swept.insert(0, "k", swept["strategy"].str[len(SWEEP_PREFIX) :].astype(int))
    return (
        swept.drop(columns="strategy")
        .sort_values(["k", "w_a"], kind="stable")
        .reset_index(drop=True)
    )


def evaluate_run(
    cfg: RunConfig,
    weights: Sequence[float] | None = None,
    strategies: Sequence[str] | None = None,
    k_sweep: bool = False,
) -> EvalOutcome:
    """
    Evaluate the strategies on the labeled test split and write the report.
    With ``k_sweep`` the advisor is also run at every k of
    ``evaluation.k_sweep`` and the per-k table goes to ``k_sweep.csv``.
    """
    layout = RunLayout.of(cfg)
    grid = list(weights or cfg.advisor.w_grid)
    names = list(strategies or cfg.evaluation.strategies)
    test = load_split(cfg, "test")
    if not test:
        raise PipelineError(f"No test datasets under {layout.split_dir('test')}")
    built = build_strategies(
        cfg, names, grid, cfg.evaluation.k_sweep if k_sweep else ()
    )
    report = evaluate(
        built.strategies,
        test,
        load_labels(cfg),
        cfg.estimator_ids,
        grid,
        built.candidates,
    )
    paths = write_eval_report(layout.eval_dir, report)
    if k_sweep:
        target = layout.eval_dir / K_SWEEP_FILE
        try:
            k_sweep_frame(report).to_csv(
                target, index=False, float_format="%.6f", lineterminator="\n"
            )
        except OSError as e:
            raise PipelineError(f"Failed to write {target}: {e}") from e
        paths.append(target)
    return EvalOutcome(report, paths)


@dataclass
class BenchResult:
    evaluation: EvalOutcome
    timings_path: Path
    totals: dict[str, float] = field(default_factory=dict)
    ablation_paths: list[Path] = field(default_factory=list)


def _mean_selection(report: EvalReport, strategy: str) -> float:
    seconds = [t.seconds for t in report.timings if t.strategy == strategy]
    return float(np.mean(seconds)) if seconds else float("nan")


def _timing(
    phase: str, subject: str, seconds: float, w_a: float | None = None
) -> dict[str, object]:
    return {"phase": phase, "subject": subject, "w_a": w_a, "seconds": seconds}


def bench(cfg: RunConfig) -> BenchResult:
    """
    Generate, label, train, evaluate and, when configured, compare the
    incremental learning variants. Every phase is timed and the timings go
    to ``timings.csv`` at the run root.
    """
    layout = RunLayout.of(cfg)
    rows: list[dict[str, object]] = []

    start = time.perf_counter()
    gen_data(cfg)
    rows.append(_timing("generate", "corpus", time.perf_counter() - start))
    start = time.perf_counter()
    gen_workloads(cfg)
    rows.append(_timing("workload", "corpus", time.perf_counter() - start))

    labeling = label_corpus(cfg)
    rows.extend(
        _timing("label", dataset_id, seconds)
        for dataset_id, seconds in labeling.seconds.items()
    )

    grid = cfg.advisor.w_grid
    losses: list[LossKind] = ["weighted"]
    if cfg.bench.ablation:
        losses.append("basic")
    training = {loss: train(cfg, grid, loss) for loss in losses}
    rows.extend(
        _timing("train", loss, t.seconds, t.w_a)
        for loss, trained in training.items()
        for t in trained
    )

    names: list[str] = list(cfg.evaluation.strategies)
    if cfg.bench.ablation:
        names.append(ABLATION_STRATEGY)
    outcome = evaluate_run(cfg, grid, names, k_sweep=cfg.bench.k_sweep)
    rows.extend(
        _timing("select", f"{t.strategy}:{t.dataset_id}", t.seconds, t.w_a)
        for t in outcome.report.timings
    )

    ablation_paths: list[Path] = []
    if cfg.bench.incremental_ablation:
        for w_a in grid:
            start = time.perf_counter()
            ablation = il_ablation(cfg, w_a, cfg.bench.il_fractions)
            rows.append(
                _timing("incremental", "ablation", time.perf_counter() - start, w_a)
            )
            ablation_paths.append(ablation.path)

    timings = pd.DataFrame(rows, columns=["phase", "subject", "w_a", "seconds"])
    try:
        layout.root.mkdir(parents=True, exist_ok=True)
        timings.to_csv(layout.timings, index=False, lineterminator="\n")
    except OSError as e:
        raise PipelineError(f"Failed to write {layout.timings}: {e}") from e

    label_seconds = list(labeling.seconds.values())
    totals = {
        "label_total": float(sum(label_seconds)),
        "label_per_dataset": float(np.mean(label_seconds)) if label_seconds else 0.0,
        "train_total": float(sum(t.seconds for t in training["weighted"])),
        "advisor_select_per_dataset": _mean_selection(outcome.report, "advisor"),
        "sampling_select_per_dataset": _mean_selection(outcome.report, "sampling"),
        "learning_all_select_per_dataset": _mean_selection(
            outcome.report, LEARNING_ALL
        ),
    }
    logger.info(
        "Bench: labeling %.1fs, training %.1fs, advisor %.4fs vs sampling %.4fs "
        "per dataset",
        totals["label_total"], totals["train_total"],
        totals["advisor_select_per_dataset"], totals["sampling_select_per_dataset"],
    )
    return BenchResult(outcome, layout.timings, totals, ablation_paths)
