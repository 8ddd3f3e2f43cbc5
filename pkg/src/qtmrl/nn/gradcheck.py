"""Central-finite-difference gradient verification for scalar-valued graphs."""

from __future__ import annotations

from typing import Callable, Iterable

import torch

__all__ = ["value_and_grad", "max_relative_grad_error"]


def value_and_grad(
    fn: Callable[[], torch.Tensor], wrt: Iterable[torch.Tensor]
) -> tuple[float, list[torch.Tensor]]:
    """Evaluate a scalar graph and return (value, gradients w.r.t. ``wrt``)."""
    wrt = list(wrt)
    out = fn()
    if out.numel() != 1:
        raise ValueError("graph output must be scalar")
    grads = torch.autograd.grad(out, wrt, allow_unused=True)
    grads = [g if g is not None else torch.zeros_like(p) for g, p in zip(grads, wrt)]
    return float(out), grads


def max_relative_grad_error(
    fn: Callable[[], torch.Tensor],
    params: Iterable[torch.Tensor],
    n_probes: int = 100,
    h: float = 1e-5,
    gen: torch.Generator | None = None,
) -> float:
    """Compare backward gradients against central differences at random entries.

    Probes ``n_probes`` randomly chosen parameter entries and returns the
    worst relative error |g_bp - g_fd| / max(|g_bp|, |g_fd|, 1e-8).
    """
    params = list(params)
    if gen is None:
        gen = torch.Generator().manual_seed(0)
    _, grads = value_and_grad(fn, params)
    worst = 0.0
    sizes = [p.numel() for p in params]
    total = sum(sizes)
    for _ in range(n_probes):
        flat_idx = int(torch.randint(total, (1,), generator=gen))
        pi = 0
        while flat_idx >= sizes[pi]:
            flat_idx -= sizes[pi]
            pi += 1
        p = params[pi]
        with torch.no_grad():
            orig = p.view(-1)[flat_idx].item()
            p.view(-1)[flat_idx] = orig + h
            f_plus = float(fn())
            p.view(-1)[flat_idx] = orig - h
            f_minus = float(fn())
            p.view(-1)[flat_idx] = orig
        g_fd = (f_plus - f_minus) / (2.0 * h)
        g_bp = float(grads[pi].view(-1)[flat_idx])
        err = abs(g_bp - g_fd) / max(abs(g_bp), abs(g_fd), 1e-8)
        worst = max(worst, err)
    return worst
