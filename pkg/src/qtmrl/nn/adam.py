"""ADAM with bias correction, operating in place on torch parameters."""

from __future__ import annotations

import torch

__all__ = ["adam_step", "Adam"]


def adam_step(
    param: torch.Tensor,
    grad: torch.Tensor,
    state: dict,
    lr: float = 3e-4,
    beta1: float = 0.9,
    beta2: float = 0.999,
    eps: float = 1e-8,
) -> None:
    """One update of a single tensor; ``state`` holds m, v and the step count."""
    if not state:
        state["m"] = torch.zeros_like(param)
        state["v"] = torch.zeros_like(param)
        state["t"] = 0
    state["t"] += 1
    m, v, t = state["m"], state["v"], state["t"]
    m.mul_(beta1).add_(grad, alpha=1.0 - beta1)
    v.mul_(beta2).addcmul_(grad, grad, value=1.0 - beta2)
    m_hat = m / (1.0 - beta1**t)
    v_hat = v / (1.0 - beta2**t)
    param.addcdiv_(m_hat, v_hat.sqrt().add_(eps), value=-lr)


class Adam:
    def __init__(self, params, lr: float = 3e-4, beta1: float = 0.9, beta2: float = 0.999, eps: float = 1e-8):
        self.params = list(params)
        self.lr = lr
        self.beta1 = beta1
        self.beta2 = beta2
        self.eps = eps
        self.states: list[dict] = [{} for _ in self.params]

    @torch.no_grad()
    def step(self) -> None:
        for p, st in zip(self.params, self.states):
            if p.grad is not None:
                adam_step(p, p.grad, st, self.lr, self.beta1, self.beta2, self.eps)

    def zero_grad(self) -> None:
        for p in self.params:
            p.grad = None

    def state_arrays(self) -> dict:
        """Flat view of optimizer state for checkpointing."""
        out = {}
        for i, st in enumerate(self.states):
            if st:
                out[f"{i}.m"] = st["m"]
                out[f"{i}.v"] = st["v"]
                out[f"{i}.t"] = torch.tensor([float(st["t"])], dtype=torch.float64)
        return out

    def load_state_arrays(self, arrays: dict) -> None:
        for i in range(len(self.params)):
            if f"{i}.m" in arrays:
                self.states[i] = {
                    "m": arrays[f"{i}.m"].clone(),
                    "v": arrays[f"{i}.v"].clone(),
                    "t": int(arrays[f"{i}.t"].item()),
                }
            else:
                self.states[i] = {}
