"""Network building blocks: strided conv blocks and dense stacks.

All parameters are 64-bit floats, initialized with fan-in-scaled uniform
weights from an explicit torch.Generator so runs are reproducible.
"""

from __future__ import annotations

import math

import torch

__all__ = ["init_uniform_", "ConvBlock", "ConvStack", "Dense", "MLP"]

DTYPE = torch.float64


def init_uniform_(tensor: torch.Tensor, fan_in: int, gen: torch.Generator) -> None:
    bound = 1.0 / math.sqrt(fan_in)
    with torch.no_grad():
        tensor.uniform_(-bound, bound, generator=gen)


class Dense(torch.nn.Module):
    def __init__(self, n_in: int, n_out: int, gen: torch.Generator):
        super().__init__()
        self.weight = torch.nn.Parameter(torch.empty(n_out, n_in, dtype=DTYPE))
        self.bias = torch.nn.Parameter(torch.empty(n_out, dtype=DTYPE))
        init_uniform_(self.weight, n_in, gen)
        init_uniform_(self.bias, n_in, gen)

    def forward(self, x: torch.Tensor) -> torch.Tensor:
        return torch.nn.functional.linear(x, self.weight, self.bias)


class MLP(torch.nn.Module):
    """Dense stack with rectified-linear hidden activations, linear output."""

    def __init__(self, n_in: int, hidden: tuple[int, ...], n_out: int, gen: torch.Generator):
        super().__init__()
        sizes = (n_in, *hidden, n_out)
        self.layers = torch.nn.ModuleList(
            [Dense(sizes[i], sizes[i + 1], gen) for i in range(len(sizes) - 1)]
        )

    def forward(self, x: torch.Tensor) -> torch.Tensor:
        for i, layer in enumerate(self.layers):
            x = layer(x)
            if i < len(self.layers) - 1:
                x = torch.relu(x)
        return x


class ConvBlock(torch.nn.Module):
    """Halves a channel series: strided conv + ReLU, plus a linear skip path.

    Input (B, C_in, L) with even L -> output (B, C_out, L/2). The main path
    is a kernel-2 stride-2 convolution followed by ReLU; the skip path is a
    linear channel projection of the even-indexed positions, so the block
    output equals the skip output when the conv weights are zero.
    """

    def __init__(self, c_in: int, c_out: int, gen: torch.Generator):
        super().__init__()
        self.c_in = c_in
        self.c_out = c_out
        self.weight = torch.nn.Parameter(torch.empty(c_out, c_in, 2, dtype=DTYPE))
        self.bias = torch.nn.Parameter(torch.empty(c_out, dtype=DTYPE))
        self.skip_weight = torch.nn.Parameter(torch.empty(c_out, c_in, 1, dtype=DTYPE))
        init_uniform_(self.weight, c_in * 2, gen)
        init_uniform_(self.bias, c_in * 2, gen)
        init_uniform_(self.skip_weight, c_in, gen)

    def forward(self, x: torch.Tensor) -> torch.Tensor:
        if x.shape[-1] % 2 != 0:
            raise ValueError(f"series length {x.shape[-1]} must be even")
        main = torch.relu(torch.nn.functional.conv1d(x, self.weight, self.bias, stride=2))
        skip = torch.nn.functional.conv1d(x, self.skip_weight, None, stride=2)
        return main + skip

    def main_path(self, x: torch.Tensor) -> torch.Tensor:
        return torch.relu(torch.nn.functional.conv1d(x, self.weight, self.bias, stride=2))

    def skip_path(self, x: torch.Tensor) -> torch.Tensor:
        return torch.nn.functional.conv1d(x, self.skip_weight, None, stride=2)


class ConvStack(torch.nn.Module):
    """log2(N) conv blocks collapsing a length-N series to length 1."""

    def __init__(self, c_in: int, channels: tuple[int, ...], history_len: int, gen: torch.Generator):
        super().__init__()
        if (1 << len(channels)) != history_len:
            raise ValueError(
                f"need log2({history_len}) = {int(math.log2(history_len))} conv blocks, "
                f"got {len(channels)} channel entries"
            )
        blocks = []
        prev = c_in
        for c in channels:
            blocks.append(ConvBlock(prev, c, gen))
            prev = c
        self.blocks = torch.nn.ModuleList(blocks)
        self.c_out = prev

    def forward(self, x: torch.Tensor) -> torch.Tensor:
        for block in self.blocks:
            x = block(x)
        return x.squeeze(-1)
