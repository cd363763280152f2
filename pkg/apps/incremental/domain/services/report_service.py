"""
Before/after cross-validation report of an incremental run.
"""

import logging
from collections.abc import Sequence
from pathlib import Path

import pandas as pd

from ..models import IncrementalResult
from .feedback_service import IncrementalError

logger = logging.getLogger(__name__)


def report_filename(w_a: float) -> str:
    return f"incremental_report_wa_{w_a:.2f}.csv"


def report_frame(result: IncrementalResult, dataset_ids: Sequence[str]) -> pd.DataFrame:
    feedback = set(result.before.feedback)
    return pd.DataFrame(
        {
            "dataset_id": list(dataset_ids),
            "fold": result.before.folds,
            "feedback": [i in feedback for i in range(len(dataset_ids))],
            "derror_before": result.before.derrors,
            "derror_after": result.after.derrors,
        }
    )


def write_report(
    path: Path | str, result: IncrementalResult, dataset_ids: Sequence[str]
) -> Path:
    target = Path(path)
    try:
        target.parent.mkdir(parents=True, exist_ok=True)
        report_frame(result, dataset_ids).to_csv(
            target, index=False, float_format="%.6f", lineterminator="\n"
        )
    except OSError as e:
        raise IncrementalError(f"Failed to write report {target}: {e}") from e
    logger.info("Wrote incremental report to %s", target)
    return target


def ablation_filename(w_a: float) -> str:
    return f"incremental_ablation_wa_{w_a:.2f}.csv"


def write_ablation(path: Path | str, rows: Sequence[dict[str, object]]) -> Path:
    """One row per (fraction, variant) with its mean cross-validation D-error."""
    target = Path(path)
    frame = pd.DataFrame(
        list(rows), columns=["fraction", "n_datasets", "variant", "mean_derror"]
    )
    try:
        target.parent.mkdir(parents=True, exist_ok=True)
        frame.to_csv(target, index=False, float_format="%.6f", lineterminator="\n")
    except OSError as e:
        raise IncrementalError(f"Failed to write ablation {target}: {e}") from e
    logger.info("Wrote incremental ablation to %s", target)
    return target
