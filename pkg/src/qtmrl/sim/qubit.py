"""Superconducting-qubit refrigerator: two-level medium, two resonant baths.

H(u) = -E0*(delta*sigma_x + u*sigma_z); the gap is 2*E0*sqrt(delta^2 + u^2).
Each bath couples through jump operators between the instantaneous
eigenstates, with rates given by its noise power spectrum evaluated at
+/- the gap. Both baths stay coupled at all times; the discrete action set
is the single element "both".
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dynamics import Machine
from .quantities import phase_fixed_eigh

__all__ = ["QubitBath", "QubitParams", "noise_power_spectrum", "QubitMachine"]

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)


@dataclass(frozen=True)
class QubitBath:
    """Resonant-circuit bath: coupling g, quality factor, base frequency, beta."""

    g: float
    quality: float
    omega: float
    beta: float

    def __post_init__(self) -> None:
        if self.g <= 0 or self.quality <= 0 or self.omega <= 0 or self.beta <= 0:
            raise ValueError("bath parameters must be positive")


@dataclass(frozen=True)
class QubitParams:
    e0: float
    delta: float
    hot: QubitBath
    cold: QubitBath

    def __post_init__(self) -> None:
        if self.e0 <= 0 or self.delta <= 0:
            raise ValueError("e0 and delta must be positive")
        if not (self.cold.beta > self.hot.beta > 0):
            raise ValueError("need beta_cold > beta_hot > 0")

    @classmethod
    def resonant(
        cls,
        e0: float,
        delta: float,
        g_hot: float,
        g_cold: float,
        q_hot: float,
        q_cold: float,
        beta_hot: float,
        beta_cold: float,
    ) -> "QubitParams":
        """Place the cold bath on resonance at u=0 and the hot bath at u=1/2."""
        omega_cold = 2.0 * e0 * delta
        omega_hot = 2.0 * e0 * math.sqrt(delta**2 + 0.25)
        return cls(
            e0=e0,
            delta=delta,
            hot=QubitBath(g_hot, q_hot, omega_hot, beta_hot),
            cold=QubitBath(g_cold, q_cold, omega_cold, beta_cold),
        )


def noise_power_spectrum(bath: QubitBath, de: float) -> float:
    """Bath noise power at signed energy ``de``; strictly positive for de != 0."""
    if de == 0.0:
        raise ValueError("noise power spectrum undefined at zero energy")
    lorentz = 1.0 / (1.0 + bath.quality**2 * (de / bath.omega - bath.omega / de) ** 2)
    x = bath.beta * de
    return 0.5 * bath.g * lorentz * de / math.expm1(x)


class QubitMachine(Machine):
    dim = 2

    def __init__(
        self,
        params: QubitParams,
        control_range: tuple[float, float] = (0.0, 0.75),
        active_baths: tuple[str, ...] = ("hot", "cold"),
    ) -> None:
        super().__init__()
        self.params = params
        self.control_range = control_range
        self.discrete_actions = ("both",)
        self.active_baths = active_baths
        self.beta_hot = params.hot.beta
        self.beta_cold = params.cold.beta

    def hamiltonian(self, u: float) -> np.ndarray:
        if not np.isfinite(u):
            raise ValueError("control must be finite")
        return -self.params.e0 * (self.params.delta * SIGMA_X + u * SIGMA_Z)

    def gap(self, u: float) -> float:
        return 2.0 * self.params.e0 * math.hypot(self.params.delta, u)

    def eigensystem(self, u: float) -> tuple[np.ndarray, np.ndarray]:
        """(energies ascending, phase-fixed eigenvectors as columns)."""
        return phase_fixed_eigh(self.hamiltonian(u))

    def rates(self, u: float, bath: str) -> tuple[float, float]:
        """(excitation, decay) rates for one bath at control u."""
        b = self.params.hot if bath == "hot" else self.params.cold
        de = self.gap(u)
        return noise_power_spectrum(b, de), noise_power_spectrum(b, -de)

    def total_coupling(self, u: float, bath: str) -> float:
        up, down = self.rates(u, bath)
        return up + down

    def bath_jump_ops(self, u: float, d: str) -> dict[str, list[tuple[np.ndarray, float]]]:
        # d is the degenerate single action: both baths permanently coupled
        _, v = self.eigensystem(u)
        g, e = v[:, 0], v[:, 1]
        raise_op = -1j * np.outer(e, g.conj())
        lower_op = 1j * np.outer(g, e.conj())
        out: dict[str, list[tuple[np.ndarray, float]]] = {"hot": [], "cold": []}
        for bath in ("hot", "cold"):
            if bath in self.active_baths:
                up, down = self.rates(u, bath)
                out[bath] = [(raise_op, up), (lower_op, down)]
        return out

    def default_n_sub(self, dt: float) -> int:
        target = min(dt / 16.0, 0.025 / self.params.e0)
        return 1 << max(0, math.ceil(math.log2(dt / target)))
