"""Domain services for the pipeline bounded context."""

from .config_service import PipelineError, load_run_config, resolve
from .data_steps import (
    SPLITS,
    LabelingSummary,
    gen_data,
    gen_workloads,
    generate_datasets,
    label_corpus,
    load_labels,
    load_split,
)
from .eval_steps import (
    ABLATION_STRATEGY,
    K_SWEEP_FILE,
    LEARNING_ALL,
    BenchResult,
    EvalOutcome,
    StrategySet,
    bench,
    build_strategies,
    evaluate_run,
    expand_strategies,
    k_sweep_frame,
)
from .layout import (
    RunLayout,
    Split,
    package_versions,
    write_run_manifest,
)
from .model_steps import (
    AblationOutcome,
    CrossTrainOutcome,
    DriftOutcome,
    TrainedWeight,
    cross_train,
    drift_check,
    il_ablation,
    labeled_train_corpus,
    load_rcs,
    recommend_dataset,
    train,
)

__all__ = [
    "ABLATION_STRATEGY",
    "AblationOutcome",
    "BenchResult",
    "CrossTrainOutcome",
    "DriftOutcome",
    "EvalOutcome",
    "K_SWEEP_FILE",
    "LEARNING_ALL",
    "LabelingSummary",
    "PipelineError",
    "RunLayout",
    "SPLITS",
    "Split",
    "StrategySet",
    "TrainedWeight",
    "bench",
    "build_strategies",
    "cross_train",
    "drift_check",
    "evaluate_run",
    "expand_strategies",
    "gen_data",
    "gen_workloads",
    "generate_datasets",
    "il_ablation",
    "k_sweep_frame",
    "label_corpus",
    "labeled_train_corpus",
    "load_labels",
    "load_rcs",
    "load_run_config",
    "package_versions",
    "recommend_dataset",
    "resolve",
    "train",
    "write_run_manifest",
]
