"""Domain services for the baselines bounded context."""

from .ensemble_service import (
    ENSEMBLE_ID,
    EnsembleCandidate,
    MemberRuns,
    ensemble_record,
    ensemble_weights,
    run_members,
)
from .evaluate_service import (
    ROWS_FILE,
    SUMMARY_FILE,
    SUMMARY_TEXT_FILE,
    TIMINGS_FILE,
    Candidate,
    accuracy_key,
    evaluate,
    format_summary,
    summarize,
    summary_frame,
    write_eval_report,
)
from .mlp_service import HEAD_HIDDEN, MlpSelector, train_mlp_selector
from .sampling_service import (
    DEFAULT_SAMPLE_RATE,
    SamplingSelector,
    sample_dataset,
    sample_labels,
    sampling_select,
)
from .selectors import (
    RawKnnSelector,
    SelectionError,
    Strategy,
    oracle_select,
    rawknn_select,
    rule_select,
)

__all__ = [
    "Candidate",
    "DEFAULT_SAMPLE_RATE",
    "ENSEMBLE_ID",
    "EnsembleCandidate",
    "HEAD_HIDDEN",
    "MemberRuns",
    "MlpSelector",
    "ROWS_FILE",
    "RawKnnSelector",
    "SUMMARY_FILE",
    "SUMMARY_TEXT_FILE",
    "SamplingSelector",
    "SelectionError",
    "Strategy",
    "TIMINGS_FILE",
    "accuracy_key",
    "ensemble_record",
    "ensemble_weights",
    "evaluate",
    "format_summary",
    "oracle_select",
    "rawknn_select",
    "rule_select",
    "run_members",
    "sample_dataset",
    "sample_labels",
    "sampling_select",
    "summarize",
    "summary_frame",
    "train_mlp_selector",
    "write_eval_report",
]
