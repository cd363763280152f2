"""Domain services for the incremental bounded context."""

from .feedback_service import (
    IncrementalError,
    collect_feedback,
    cross_validate,
    fold_assignment,
)
from .mixup_service import (
    MIXUP,
    NO_AUGMENTATION,
    VARIANTS,
    WITHOUT_IL,
    compare_variants,
    incremental_train,
    mixup,
    synthesize,
)
from .report_service import (
    ablation_filename,
    report_filename,
    report_frame,
    write_ablation,
    write_report,
)

__all__ = [
    "IncrementalError",
    "MIXUP",
    "NO_AUGMENTATION",
    "VARIANTS",
    "WITHOUT_IL",
    "ablation_filename",
    "collect_feedback",
    "compare_variants",
    "cross_validate",
    "fold_assignment",
    "incremental_train",
    "mixup",
    "report_filename",
    "report_frame",
    "synthesize",
    "write_ablation",
    "write_report",
]
