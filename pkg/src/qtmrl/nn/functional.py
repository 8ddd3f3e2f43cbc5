"""Differentiable pieces: the squashed-Gaussian action map and its density."""

from __future__ import annotations

import math

import torch

__all__ = ["LOGSTD_MIN", "LOGSTD_MAX", "squashed_gaussian", "squashed_log_prob"]

LOGSTD_MIN = -20.0
LOGSTD_MAX = 2.0

_LOG_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)
_LOG2 = math.log(2.0)


def squashed_gaussian(
    mu: torch.Tensor,
    log_std: torch.Tensor,
    xi: torch.Tensor,
    u_lo: float,
    u_hi: float,
) -> tuple[torch.Tensor, torch.Tensor]:
    """Map latent noise xi through the tanh-squashed Gaussian onto [u_lo, u_hi].

    Returns (u, log-density of u). log_std is clamped before exponentiation.
    The tanh Jacobian uses log(1 - tanh^2 z) = 2*(log 2 - z - softplus(-2z)),
    which stays finite under saturation.
    """
    log_std = torch.clamp(log_std, LOGSTD_MIN, LOGSTD_MAX)
    std = torch.exp(log_std)
    z = mu + std * xi
    u = u_lo + 0.5 * (u_hi - u_lo) * (1.0 + torch.tanh(z))
    log_gauss = -0.5 * xi.pow(2) - log_std - _LOG_SQRT_2PI
    log_jac = math.log(0.5 * (u_hi - u_lo)) + 2.0 * (_LOG2 - z - torch.nn.functional.softplus(-2.0 * z))
    return u, log_gauss - log_jac


def squashed_log_prob(
    mu: torch.Tensor,
    log_std: torch.Tensor,
    u: torch.Tensor,
    u_lo: float,
    u_hi: float,
) -> torch.Tensor:
    """Density of a given action under the squashed Gaussian (no sampling)."""
    log_std = torch.clamp(log_std, LOGSTD_MIN, LOGSTD_MAX)
    std = torch.exp(log_std)
    y = torch.clamp(2.0 * (u - u_lo) / (u_hi - u_lo) - 1.0, -1.0 + 1e-12, 1.0 - 1e-12)
    z = torch.atanh(y)
    log_gauss = -0.5 * ((z - mu) / std).pow(2) - log_std - _LOG_SQRT_2PI
    log_jac = math.log(0.5 * (u_hi - u_lo)) + 2.0 * (_LOG2 - z - torch.nn.functional.softplus(-2.0 * z))
    return log_gauss - log_jac
