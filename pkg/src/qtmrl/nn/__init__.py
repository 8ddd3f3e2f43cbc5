"""Differentiable layers, optimizer, checkpoints, gradient verification."""

from .adam import Adam, adam_step
from .checkpoint import load_checkpoint, save_checkpoint
from .functional import LOGSTD_MAX, LOGSTD_MIN, squashed_gaussian, squashed_log_prob
from .gradcheck import max_relative_grad_error, value_and_grad
from .layers import MLP, ConvBlock, ConvStack, Dense, init_uniform_

__all__ = [
    "Adam",
    "adam_step",
    "load_checkpoint",
    "save_checkpoint",
    "LOGSTD_MAX",
    "LOGSTD_MIN",
    "squashed_gaussian",
    "squashed_log_prob",
    "max_relative_grad_error",
    "value_and_grad",
    "MLP",
    "ConvBlock",
    "ConvStack",
    "Dense",
    "init_uniform_",
]
