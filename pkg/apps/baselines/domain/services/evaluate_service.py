"""
Strategy evaluation: D-error of each choice against the labeled optimum,
summarized per strategy and accuracy weight.
"""

import logging
import time
from collections.abc import Callable, Mapping, Sequence
from dataclasses import asdict
from pathlib import Path

import pandas as pd

from apps.corpus.domain.models import Dataset, LabelRecord
from apps.estimators.domain.services import EstimatorError, d_error, score_vector

from ..models import EPSILONS, EvalReport, EvalRow, SelectionTiming, StrategySummary
from .selectors import SelectionError, Strategy

logger = logging.getLogger(__name__)

ROWS_FILE = "eval_rows.csv"
SUMMARY_FILE = "eval_summary.csv"
SUMMARY_TEXT_FILE = "eval_summary.txt"
TIMINGS_FILE = "timings.csv"

Candidate = Callable[[Dataset, float], LabelRecord]


def accuracy_key(epsilon: float) -> str:
    return f"{epsilon:.2f}"


def summarize(rows: Sequence[EvalRow]) -> list[StrategySummary]:
    """One summary per (strategy, w_a), in first-seen order."""
    frame = pd.DataFrame([asdict(r) for r in rows])
    if frame.empty:
        return []
    summaries = []
    for (strategy, w_a), group in frame.groupby(["strategy", "w_a"], sort=False):
        errors = group["d_error"]
        summaries.append(
            StrategySummary(
                strategy=str(strategy),
                w_a=float(w_a),
                n=len(group),
                mean_derror=float(errors.mean()),
                median_derror=float(errors.median()),
                p90_derror=float(errors.quantile(0.9)),
                max_derror=float(errors.max()),
                accuracy={
                    accuracy_key(eps): float((errors <= eps).mean()) for eps in EPSILONS
                },
            )
        )
    return summaries


def _candidate_row(
    name: str,
    rec: LabelRecord,
    pool_records: Sequence[LabelRecord],
    ids: tuple[str, ...],
    w_a: float,
) -> EvalRow:
    if rec.estimator_id in ids:
        raise SelectionError(
            f"Candidate {name} reuses the pool id {rec.estimator_id!r}"
        )
    by_id = {r.estimator_id: r for r in pool_records}
    joint = [*(by_id[i] for i in ids), rec]
    try:
        scores = score_vector(joint, w_a, [*ids, rec.estimator_id])
    except EstimatorError as e:
        raise SelectionError(f"Cannot score candidate {name}: {e}") from e
    return EvalRow(
        strategy=name,
        w_a=w_a,
        dataset_id=rec.dataset_id,
        chosen=rec.estimator_id,
        optimum=scores.best_id,
        d_error=d_error(scores, rec.estimator_id),
    )


def evaluate(
    strategies: Mapping[str, Strategy],
    test_corpus: Sequence[Dataset],
    records_by_dataset: Mapping[str, Sequence[LabelRecord]],
    estimator_ids: Sequence[str],
    w_grid: Sequence[float],
    candidates: Mapping[str, Candidate] | None = None,
) -> EvalReport:
    """
    Run every strategy on every test dataset at every ``w_a`` of ``w_grid``.

    A candidate is an estimator outside the pool, such as an ensemble. It is
    scored together with the pool and its D-error is measured against the
    best of both.

    Raises:
        SelectionError: If a strategy returns an id outside the pool, a
            candidate reuses a pool id or a test dataset has no usable labels
    """
    ids = tuple(estimator_ids)
    report = EvalReport()
    for w_a in w_grid:
        truths = {}
        for d in test_corpus:
            try:
                truths[d.id] = score_vector(records_by_dataset[d.id], w_a, ids)
            except (KeyError, EstimatorError) as e:
                raise SelectionError(
                    f"No usable labels for test dataset {d.id}: {e}"
                ) from e
        for name, strategy in strategies.items():
            for d in test_corpus:
                start = time.perf_counter()
                chosen = strategy(d, w_a)
                elapsed = time.perf_counter() - start
                if chosen not in ids:
                    raise SelectionError(
                        f"Strategy {name} chose {chosen!r}, not a pool member"
                    )
                truth = truths[d.id]
                report.rows.append(
                    EvalRow(
                        strategy=name,
                        w_a=w_a,
                        dataset_id=d.id,
                        chosen=chosen,
                        optimum=truth.best_id,
                        d_error=d_error(truth, chosen),
                    )
                )
                report.timings.append(SelectionTiming(name, w_a, d.id, elapsed))
        for name, candidate in (candidates or {}).items():
            for d in test_corpus:
                start = time.perf_counter()
                rec = candidate(d, w_a)
                elapsed = time.perf_counter() - start
                report.rows.append(
                    _candidate_row(name, rec, records_by_dataset[d.id], ids, w_a)
                )
                report.timings.append(SelectionTiming(name, w_a, d.id, elapsed))
    report.summaries = summarize(report.rows)
    for s in report.summaries:
        logger.info(
            "%s at w_a=%.2f: mean D-error %.4f, accuracy@0.1 %.3f",
            s.strategy, s.w_a, s.mean_derror, s.accuracy[accuracy_key(0.1)],
        )
    return report


def summary_frame(report: EvalReport) -> pd.DataFrame:
    return pd.DataFrame(
        [
            {
                "strategy": s.strategy,
                "w_a": s.w_a,
                "n": s.n,
                "mean_derror": s.mean_derror,
                "median_derror": s.median_derror,
                "p90_derror": s.p90_derror,
                "max_derror": s.max_derror,
                **{f"acc@{k}": v for k, v in s.accuracy.items()},
            }
            for s in report.summaries
        ]
    )


def format_summary(report: EvalReport) -> str:
    """Fixed-width summary table."""
    frame = summary_frame(report)
    if frame.empty:
        return "(no evaluations)"
    return frame.to_string(index=False, float_format=lambda v: f"{v:.4f}")


def write_eval_report(run_dir: Path | str, report: EvalReport) -> list[Path]:
    """
    Write rows, summary CSV and summary table (deterministic) plus the
    selection timings.
    """
    root = Path(run_dir)
    paths = [root / ROWS_FILE, root / SUMMARY_FILE, root / SUMMARY_TEXT_FILE]
    try:
        root.mkdir(parents=True, exist_ok=True)
        pd.DataFrame([asdict(r) for r in report.rows]).to_csv(
            paths[0], index=False, float_format="%.6f", lineterminator="\n"
        )
        summary_frame(report).to_csv(
            paths[1], index=False, float_format="%.6f", lineterminator="\n"
        )
        paths[2].write_text(format_summary(report) + "\n", encoding="utf-8")
        timings = root / TIMINGS_FILE
        pd.DataFrame([asdict(t) for t in report.timings]).to_csv(
            timings, index=False, lineterminator="\n"
        )
    except OSError as e:
        raise SelectionError(f"Failed to write evaluation report to {root}: {e}") from e
    return [*paths, timings]
