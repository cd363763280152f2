"""Domain services for the dml bounded context."""

from .loss_service import (
    TrainingError,
    anchor_pair_gradients,
    basic_contrastive_loss,
    basic_terms,
    cosine_sim,
    embed_distance,
    pairwise_distances,
    partition,
    positive_ratio,
    similarity_matrix,
    weighted_contrastive_loss,
    weighted_terms,
)
from .model_store import WA_GRID, ModelNotFoundError, ModelStore
from .trainer_service import (
    LOSSES,
    label_matrix,
    labeled_ids,
    loss_trace_filename,
    train_encoder,
    write_loss_trace,
)

__all__ = [
    "LOSSES",
    "ModelNotFoundError",
    "ModelStore",
    "TrainingError",
    "WA_GRID",
    "anchor_pair_gradients",
    "basic_contrastive_loss",
    "basic_terms",
    "cosine_sim",
    "embed_distance",
    "label_matrix",
    "labeled_ids",
    "loss_trace_filename",
    "pairwise_distances",
    "partition",
    "positive_ratio",
    "similarity_matrix",
    "train_encoder",
    "weighted_contrastive_loss",
    "weighted_terms",
    "write_loss_trace",
]
