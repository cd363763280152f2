"""Domain services for the encoder bounded context."""

from .gin import (
    EncoderError,
    GINEncoder,
    ginconv_backward,
    ginconv_forward,
    symmetrize,
)
from .model_io import TrainedEncoder, load_model, model_filename, save_model
from .nn import MLP, Params, sgd_step, softmax_cross_entropy

__all__ = [
    "EncoderError",
    "GINEncoder",
    "MLP",
    "Params",
    "TrainedEncoder",
    "ginconv_backward",
    "ginconv_forward",
    "load_model",
    "model_filename",
    "save_model",
    "sgd_step",
    "softmax_cross_entropy",
    "symmetrize",
]
