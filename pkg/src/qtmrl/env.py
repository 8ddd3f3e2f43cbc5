"""RL environment around a thermal-machine simulator.

The observable state is the ring of the last N control actions; the physics
lives behind it. Each step advances the simulator by dt under the chosen
piecewise-constant control and returns two separately normalized rewards,
one per objective: average power and average entropy production over the
step. Deterministic: the environment owns no randomness.
"""

from __future__ import annotations

import csv
import math
from collections import deque
from dataclasses import dataclass, field
from typing import IO

import numpy as np

from .sim import Machine, entropy_production

__all__ = [
    "ControlAction",
    "HistoryState",
    "kappa_from_gamma",
    "gamma_from_kappa",
    "bath_usage_penalty",
    "DiagnosticsWriter",
    "ThermalMachineEnv",
    "DIAGNOSTIC_COLUMNS",
]

#: fixed column order of the per-step diagnostics stream
DIAGNOSTIC_COLUMNS = ("step", "u", "d", "r_P", "r_Sigma", "q_hot", "q_cold", "coherence")


@dataclass(frozen=True)
class ControlAction:
    u: float
    d: str


@dataclass
class HistoryState:
    """Last N actions, oldest first; length is invariant after reset."""

    capacity: int
    actions: deque = field(default_factory=deque)

    def fill(self, action: ControlAction) -> None:
        self.actions = deque([action] * self.capacity, maxlen=self.capacity)

    def push(self, action: ControlAction) -> None:
        self.actions.append(action)

    def last(self) -> ControlAction:
        return self.actions[-1]

    def as_arrays(self) -> tuple[np.ndarray, list[str]]:
        us = np.array([a.u for a in self.actions], dtype=float)
        ds = [a.d for a in self.actions]
        return us, ds

    def copy(self) -> "HistoryState":
        out = HistoryState(self.capacity)
        out.actions = deque(self.actions, maxlen=self.capacity)
        return out

    def __len__(self) -> int:
        return len(self.actions)


def kappa_from_gamma(dt: float, gamma: float) -> float:
    """Inverse averaging timescale for a per-step discount factor."""
    if not (0.0 < gamma < 1.0):
        raise ValueError("gamma must lie in (0, 1)")
    if dt <= 0.0:
        raise ValueError("dt must be positive")
    return -math.log(gamma) / dt


def gamma_from_kappa(dt: float, kappa: float) -> float:
    return math.exp(-kappa * dt)


def bath_usage_penalty(
    ds: list[str],
    baths: tuple[str, ...] = ("hot", "cold"),
    min_count: int = 25,
    weight: float = 1.4,
) -> float:
    """Non-positive penalty for under-using either bath in the recent history."""
    total = 0.0
    for bath in baths:
        n_used = sum(1 for d in ds if d == bath)
        if n_used < min_count:
            total -= weight * (min_count - n_used) / min_count
    return total


class DiagnosticsWriter:
    """Append-only CSV stream of per-step records, fixed column order."""

    def __init__(self, stream: IO[str]):
        self._writer = csv.writer(stream)
        self._writer.writerow(DIAGNOSTIC_COLUMNS)

    def write(self, step: int, action: ControlAction, diag: dict) -> None:
        self._writer.writerow(
            [
                step,
                repr(action.u),
                action.d,
                repr(diag["r_P"]),
                repr(diag["r_Sigma"]),
                repr(diag["q_hot"]),
                repr(diag["q_cold"]),
                repr(diag["coherence"]),
            ]
        )


class ThermalMachineEnv:
    """Continuing-task environment; one instance per training run.

    objective: "cooling" rewards the cold-bath heat current, "engine" the
    total extracted heat. Penalty shaping (engine only) is returned through
    the diagnostics; rewards r_P/r_Sigma stay pure physics so that the
    combined reward c*r_P - (1-c)*r_Sigma holds for every logged step.
    """

    def __init__(
        self,
        machine: Machine,
        objective: str,
        history_len: int,
        dt: float,
        discount: float,
        p_ref: float,
        sigma_ref: float,
        penalty_enabled: bool = False,
        penalty_min_count: int = 25,
        penalty_weight: float = 1.4,
        n_sub: int | None = None,
        compute_coherence: bool = True,
    ) -> None:
        if objective not in ("cooling", "engine"):
            raise ValueError("objective must be 'cooling' or 'engine'")
        if history_len < 1 or (history_len & (history_len - 1)) != 0:
            raise ValueError("history length must be a power of two")
        if p_ref <= 0 or sigma_ref <= 0:
            raise ValueError("reference power and entropy production must be positive")
        if not (0.0 < discount < 1.0):
            raise ValueError("discount must lie in (0, 1)")
        self.machine = machine
        self.objective = objective
        self.history_len = history_len
        self.dt = dt
        self.discount = discount
        self.kappa = kappa_from_gamma(dt, discount)
        self.p_ref = p_ref
        self.sigma_ref = sigma_ref
        self.penalty_enabled = penalty_enabled
        self.penalty_min_count = penalty_min_count
        self.penalty_weight = penalty_weight
        self.n_sub = n_sub if n_sub is not None else machine.default_n_sub(dt)
        self.compute_coherence = compute_coherence
        self.diagnostics_writer: DiagnosticsWriter | None = None

        ua, ub = machine.control_range
        self.u_mid = 0.5 * (ua + ub)
        d_set = machine.discrete_actions
        self.idle_action = ControlAction(self.u_mid, "none" if "none" in d_set else d_set[0])

        self._rho: np.ndarray | None = None
        self._u_prev: float = self.u_mid
        self._state = HistoryState(history_len)
        self._step_index = 0

    # -- lifecycle ----------------------------------------------------------

    def reset(self) -> HistoryState:
        self._rho = self.machine.reset_state()
        self._u_prev = self.u_mid
        self._state.fill(self.idle_action)
        self._step_index = 0
        return self._state.copy()

    def set_physical_state(self, rho: np.ndarray, u_prev: float) -> None:
        """Place the simulator at a given (density matrix, last control)."""
        self._rho = np.array(rho, dtype=complex)
        self._u_prev = float(u_prev)

    def step(self, action: ControlAction) -> tuple[HistoryState, float, float, dict]:
        if self._rho is None:
            raise RuntimeError("reset() must be called before step()")
        ua, ub = self.machine.control_range
        if not (ua <= action.u <= ub):
            raise ValueError(f"control {action.u} outside [{ua}, {ub}]")
        if action.d not in self.machine.discrete_actions:
            raise ValueError(f"unknown discrete action {action.d!r}")

        res = self.machine.evolve_step(
            self._rho, action.u, action.d, self._u_prev, self.dt, self.n_sub
        )
        self._rho = res.rho_next
        self._u_prev = action.u
        self._state.push(action)
        self._step_index += 1

        r_p, r_sigma = self.rewards_from_heats(res.q_hot, res.q_cold)
        diag = {
            "r_P": r_p,
            "r_Sigma": r_sigma,
            "q_hot": res.q_hot,
            "q_cold": res.q_cold,
            "quench_work": res.quench_work,
            "coherence": (
                self.machine.coherence(self._rho, action.u) if self.compute_coherence else float("nan")
            ),
            "penalty": self.penalty(self._state) if self.penalty_enabled else 0.0,
        }
        if self.diagnostics_writer is not None:
            self.diagnostics_writer.write(self._step_index, action, diag)
        return self._state.copy(), r_p, r_sigma, diag

    # -- pure pieces ---------------------------------------------------------

    def rewards_from_heats(self, q_hot: float, q_cold: float) -> tuple[float, float]:
        """Per-step normalized (power, entropy-production) rewards."""
        if self.objective == "cooling":
            power = q_cold / self.dt
        else:
            power = (q_hot + q_cold) / self.dt
        sigma_rate = entropy_production(
            q_hot / self.dt, q_cold / self.dt, self.machine.beta_hot, self.machine.beta_cold
        )
        return power / self.p_ref, sigma_rate / self.sigma_ref

    def penalty(self, state: HistoryState) -> float:
        _, ds = state.as_arrays()
        return bath_usage_penalty(
            ds, ("hot", "cold"), self.penalty_min_count, self.penalty_weight
        )

    @property
    def rho(self) -> np.ndarray:
        return self._rho

    @property
    def u_prev(self) -> float:
        return self._u_prev
