"""Harmonic-oscillator heat engine in a truncated Fock space.

H(u) = p^2/(2m) + m*(u*w0)^2*q^2/2; the control u rescales the frequency.
The agent picks which bath (if any) couples each step; the coupled bath
acts through the frequency-matched ladder operators a_u, a_u^dag with
Bose-Einstein rates. Operators are built once in the reference-frequency
Fock basis and truncated to n_fock levels.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dynamics import Machine, TruncationOverflow

__all__ = ["ThermalContact", "OscillatorParams", "bose_einstein", "OscillatorMachine"]


@dataclass(frozen=True)
class ThermalContact:
    rate: float
    beta: float

    def __post_init__(self) -> None:
        if self.rate <= 0 or self.beta <= 0:
            raise ValueError("thermalization rate and beta must be positive")


@dataclass(frozen=True)
class OscillatorParams:
    mass: float
    w0: float
    hot: ThermalContact
    cold: ThermalContact
    n_fock: int = 80

    def __post_init__(self) -> None:
        if self.mass <= 0 or self.w0 <= 0:
            raise ValueError("mass and w0 must be positive")
        if self.n_fock < 8:
            raise ValueError("n_fock must be at least 8")
        if not (self.cold.beta > self.hot.beta > 0):
            raise ValueError("need beta_cold > beta_hot > 0")


def bose_einstein(x: float) -> float:
    if x <= 0.0:
        raise ValueError("argument must be positive")
    return 1.0 / math.expm1(x)


class OscillatorMachine(Machine):
    #: top-two-level population beyond which the truncation is unsound
    TAIL_TOLERANCE = 1e-6

    def __init__(
        self,
        params: OscillatorParams,
        control_range: tuple[float, float] = (0.5, 1.0),
    ) -> None:
        super().__init__()
        self.params = params
        self.dim = params.n_fock
        self.control_range = control_range
        self.discrete_actions = ("hot", "cold", "none")
        self.beta_hot = params.hot.beta
        self.beta_cold = params.cold.beta

        n = params.n_fock
        lower = np.diag(np.sqrt(np.arange(1, n, dtype=float)), k=1).astype(complex)
        scale = params.mass * params.w0
        self._q = math.sqrt(1.0 / (2.0 * scale)) * (lower + lower.conj().T)
        self._p = 1j * math.sqrt(scale / 2.0) * (lower.conj().T - lower)
        self._q2 = (self._q @ self._q).real
        self._p2 = (self._p @ self._p).real
        self._ham_cache: dict[float, np.ndarray] = {}

    def hamiltonian(self, u: float) -> np.ndarray:
        if u <= 0.0:
            raise ValueError("oscillator control must be positive")
        h = self._ham_cache.get(u)
        if h is None:
            m, w0 = self.params.mass, self.params.w0
            h = (self._p2 / (2.0 * m) + 0.5 * m * (u * w0) ** 2 * self._q2).astype(complex)
            self._cache_put(self._ham_cache, u, h)
        return h

    def ladder(self, u: float) -> tuple[np.ndarray, np.ndarray]:
        """(a_u, a_u^dag) matched to frequency u*w0."""
        if u <= 0.0:
            raise ValueError("oscillator control must be positive")
        s = math.sqrt(self.params.mass * self.params.w0 * u)
        a = (s * self._q + 1j * self._p / s) / math.sqrt(2.0)
        return a, a.conj().T

    def rates(self, u: float, bath: str) -> tuple[float, float]:
        contact = self.params.hot if bath == "hot" else self.params.cold
        n_be = bose_einstein(contact.beta * u * self.params.w0)
        return contact.rate * n_be, contact.rate * (1.0 + n_be)

    def bath_jump_ops(self, u: float, d: str) -> dict[str, list[tuple[np.ndarray, float]]]:
        if d not in self.discrete_actions:
            raise ValueError(f"unknown bath selector {d!r}")
        out: dict[str, list[tuple[np.ndarray, float]]] = {"hot": [], "cold": []}
        if d == "none":
            return out
        a, adag = self.ladder(u)
        up, down = self.rates(u, d)
        out[d] = [(adag, up), (a, down)]
        return out

    def default_n_sub(self, dt: float) -> int:
        # RK4 stability binds. The generator's spectral radius combines the
        # largest level splitting (u_max*w0*n_fock, imaginary axis) with the
        # top-level decay rate (Gamma*(2*n_th+1)*n_fock, real axis), n_th
        # evaluated at the softest operating point (lowest frequency, hottest
        # bath).
        u_min, u_max = self.control_range
        imag = u_max * self.params.w0 * self.params.n_fock
        n_th = bose_einstein(self.params.hot.beta * u_min * self.params.w0)
        real = self.params.hot.rate * (2.0 * n_th + 1.0) * self.params.n_fock
        target = min(dt / 16.0, 2.0 / (imag + real))
        return 1 << max(0, math.ceil(math.log2(dt / target)))

    def _check_truncation(self, rho: np.ndarray) -> None:
        tail = float(rho[-1, -1].real + rho[-2, -2].real)
        if tail > self.TAIL_TOLERANCE:
            raise TruncationOverflow(
                f"top-two-level population {tail:.3e} exceeds "
                f"{self.TAIL_TOLERANCE:.0e}; raise n_fock"
            )
