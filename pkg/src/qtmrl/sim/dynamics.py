"""Piecewise-constant Lindblad propagation with heat-current bookkeeping.

Controls are held constant over a step of length ``dt``: the control switch
at the step boundary contributes quench work Tr[rho*(H_new - H_old)], and the
remainder of the step integrates

    d(rho)/dt = -i[H, rho] + sum_alpha D_alpha(rho)

with fixed-step RK4 on the vectorized equation, using ``n_sub`` substeps
(powers of two). Heat integrals are accumulated with the quadrature induced
by augmenting the linear system with one row per bath, which keeps the
discrete first law exact: the current rows see exactly the same RK4 stages
as the state. For a linear autonomous system one RK4 substep equals the
degree-4 Taylor polynomial of exp(h*L), so a full step is that matrix raised
to the n_sub-th power; small systems apply it densely, large ones apply the
substeps sequentially with a sparse generator.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .quantities import dag, unvec, vec

__all__ = [
    "PositivityViolation",
    "TruncationOverflow",
    "StepResult",
    "liouvillian_dense",
    "liouvillian_sparse",
    "heat_row",
    "taylor4_transfer",
    "Machine",
]


class PositivityViolation(RuntimeError):
    """State developed a negative eigenvalue beyond tolerance."""


class TruncationOverflow(RuntimeError):
    """Population reached the top of the truncated Fock space."""


@dataclass
class StepResult:
    rho_next: np.ndarray
    q_hot: float
    q_cold: float
    quench_work: float
    u_internal_before: float
    u_internal_after: float


def liouvillian_dense(h: np.ndarray, jumps: list[tuple[np.ndarray, float]]) -> np.ndarray:
    """Vectorized generator (column-stacking convention) as a dense matrix."""
    d = h.shape[0]
    eye = np.eye(d, dtype=complex)
    lv = -1j * (np.kron(eye, h) - np.kron(h.T, eye))
    for a, rate in jumps:
        ada = dag(a) @ a
        lv += rate * (
            np.kron(a.conj(), a)
            - 0.5 * np.kron(eye, ada)
            - 0.5 * np.kron(ada.T, eye)
        )
    return lv


def liouvillian_sparse(h: np.ndarray, jumps: list[tuple[np.ndarray, float]]) -> sp.csr_matrix:
    d = h.shape[0]
    eye = sp.identity(d, format="csr", dtype=complex)
    hs = sp.csr_matrix(h)
    lv = -1j * (sp.kron(eye, hs) - sp.kron(hs.T, eye))
    for a, rate in jumps:
        asp = sp.csr_matrix(a)
        ada = (asp.conj().T @ asp).tocsr()
        lv = lv + rate * (
            sp.kron(asp.conj(), asp)
            - 0.5 * sp.kron(eye, ada)
            - 0.5 * sp.kron(ada.T, eye)
        )
    return lv.tocsr()


def heat_row(h: np.ndarray, jumps: list[tuple[np.ndarray, float]]) -> np.ndarray:
    """Row vector w with w @ vec(rho) = Tr[H * D(rho)] for one bath.

    Uses the adjoint dissipator: Tr[H D(rho)] = Tr[D^adj(H) rho].
    """
    x = np.zeros_like(h, dtype=complex)
    for a, rate in jumps:
        ada = dag(a) @ a
        x += rate * (dag(a) @ h @ a - 0.5 * (ada @ h + h @ ada))
    return vec(x.T)


def taylor4_transfer(gen: np.ndarray, h_sub: float, n_sub: int) -> np.ndarray:
    """(I + X + X^2/2 + X^3/6 + X^4/24)^n_sub with X = h_sub*gen.

    Equals n_sub RK4 substeps of the linear autonomous system; n_sub must be
    a power of two so the power is computed by repeated squaring.
    """
    if n_sub < 1 or (n_sub & (n_sub - 1)) != 0:
        raise ValueError("n_sub must be a positive power of two")
    x = h_sub * gen
    r = np.eye(gen.shape[0], dtype=complex)
    term = np.eye(gen.shape[0], dtype=complex)
    for k in range(1, 5):
        term = term @ x / k
        r = r + term
    while n_sub > 1:
        r = r @ r
        n_sub //= 2
    return r


def _rk4_sparse(gen: sp.csr_matrix, y: np.ndarray, h_sub: float, n_sub: int) -> np.ndarray:
    for _ in range(n_sub):
        k1 = gen @ y
        k2 = gen @ (y + 0.5 * h_sub * k1)
        k3 = gen @ (y + 0.5 * h_sub * k2)
        k4 = gen @ (y + h_sub * k3)
        y = y + (h_sub / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    return y


class Machine:
    """Shared propagation machinery for one working medium.

    Subclasses provide the Hamiltonian, per-bath jump operators, the control
    range and the discrete action set; this class owns the integrator, the
    augmented heat bookkeeping, guards, and the per-(u, d) generator cache.
    """

    #: dimension above which the sparse substep path is used
    _DENSE_LIMIT = 12

    dim: int
    control_range: tuple[float, float]
    discrete_actions: tuple[str, ...]
    beta_hot: float
    beta_cold: float

    # -- interface to subclasses ------------------------------------------

    def hamiltonian(self, u: float) -> np.ndarray:
        raise NotImplementedError

    def bath_jump_ops(self, u: float, d: str) -> dict[str, list[tuple[np.ndarray, float]]]:
        """Jump operators with rates, keyed by bath ("hot"/"cold")."""
        raise NotImplementedError

    def default_n_sub(self, dt: float) -> int:
        raise NotImplementedError

    def _check_truncation(self, rho: np.ndarray) -> None:
        pass

    # -- propagation -------------------------------------------------------

    def __init__(self) -> None:
        self._transfer_cache: dict = {}
        self._sparse_cache: dict = {}

    def augmented_generator(self, u: float, d: str) -> np.ndarray:
        """Dense generator on (vec rho, q_hot, q_cold)."""
        h = self.hamiltonian(u)
        per_bath = self.bath_jump_ops(u, d)
        jumps = per_bath["hot"] + per_bath["cold"]
        n = self.dim * self.dim
        gen = np.zeros((n + 2, n + 2), dtype=complex)
        gen[:n, :n] = liouvillian_dense(h, jumps)
        gen[n, :n] = heat_row(h, per_bath["hot"])
        gen[n + 1, :n] = heat_row(h, per_bath["cold"])
        return gen

    def _augmented_generator_sparse(self, u: float, d: str) -> sp.csr_matrix:
        h = self.hamiltonian(u)
        per_bath = self.bath_jump_ops(u, d)
        jumps = per_bath["hot"] + per_bath["cold"]
        n = self.dim * self.dim
        lv = liouvillian_sparse(h, jumps).tocoo()
        rows = [lv.row, np.full(n, n), np.full(n, n + 1)]
        cols = [lv.col, np.arange(n), np.arange(n)]
        data = [lv.data, heat_row(h, per_bath["hot"]), heat_row(h, per_bath["cold"])]
        return sp.csr_matrix(
            (np.concatenate(data), (np.concatenate(rows), np.concatenate(cols))),
            shape=(n + 2, n + 2),
        )

    def _propagate(self, rho: np.ndarray, u: float, d: str, dt: float, n_sub: int):
        n = self.dim * self.dim
        y = np.empty(n + 2, dtype=complex)
        y[:n] = vec(rho)
        y[n:] = 0.0
        key = (u, d, dt, n_sub)
        if self.dim <= self._DENSE_LIMIT:
            t = self._transfer_cache.get(key)
            if t is None:
                t = taylor4_transfer(self.augmented_generator(u, d), dt / n_sub, n_sub)
                self._cache_put(self._transfer_cache, key, t)
            y = t @ y
        else:
            gen = self._sparse_cache.get((u, d))
            if gen is None:
                gen = self._augmented_generator_sparse(u, d)
                self._cache_put(self._sparse_cache, (u, d), gen)
            y = _rk4_sparse(gen, y, dt / n_sub, n_sub)
        return unvec(y[:n], self.dim), float(y[n].real), float(y[n + 1].real)

    @staticmethod
    def _cache_put(cache: dict, key, value, limit: int = 4096) -> None:
        if len(cache) >= limit:
            cache.pop(next(iter(cache)))
        cache[key] = value

    def evolve_step(
        self,
        rho: np.ndarray,
        u_new: float,
        d_new: str,
        u_prev: float,
        dt: float,
        n_sub: int | None = None,
    ) -> StepResult:
        if dt <= 0.0:
            raise ValueError("dt must be positive")
        if n_sub is None:
            n_sub = self.default_n_sub(dt)
        if n_sub < 1:
            raise ValueError("n_sub must be >= 1")
        h_prev = self.hamiltonian(u_prev)
        h_new = self.hamiltonian(u_new)
        u_before = float(np.trace(rho @ h_prev).real)
        quench = float(np.trace(rho @ (h_new - h_prev)).real)
        rho_next, q_hot, q_cold = self._propagate(rho, u_new, d_new, dt, n_sub)
        evals = np.linalg.eigvalsh(rho_next)
        if evals.min() < -1e-6:
            raise PositivityViolation(
                f"min eigenvalue {evals.min():.3e} after step (u={u_new}, d={d_new}); "
                "increase n_sub or the truncation dimension"
            )
        self._check_truncation(rho_next)
        u_after = float(np.trace(rho_next @ h_new).real)
        return StepResult(rho_next, q_hot, q_cold, quench, u_before, u_after)

    # -- convenience -------------------------------------------------------

    def gibbs(self, u: float, beta: float) -> np.ndarray:
        from .quantities import gibbs_state

        return gibbs_state(self.hamiltonian(u), beta)

    def reset_state(self) -> np.ndarray:
        """Gibbs state of H at the midpoint control, at the cold temperature."""
        ua, ub = self.control_range
        return self.gibbs(0.5 * (ua + ub), self.beta_cold)

    def coherence(self, rho: np.ndarray, u: float) -> float:
        from .quantities import relative_entropy_of_coherence

        return relative_entropy_of_coherence(rho, self.hamiltonian(u))
