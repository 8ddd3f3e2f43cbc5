"""State functionals: entropies, Gibbs states, coherence, entropy production."""

from __future__ import annotations

import numpy as np

__all__ = [
    "dag",
    "vec",
    "unvec",
    "phase_fixed_eigh",
    "gibbs_state",
    "von_neumann_entropy",
    "trace_distance",
    "entropy_production",
    "relative_entropy_of_coherence",
]


def dag(a: np.ndarray) -> np.ndarray:
    return a.conj().T


def vec(rho: np.ndarray) -> np.ndarray:
    """Column-stack a matrix (Fortran order)."""
    return np.asarray(rho, dtype=complex).reshape(-1, order="F")


def unvec(v: np.ndarray, dim: int) -> np.ndarray:
    return np.asarray(v, dtype=complex).reshape((dim, dim), order="F")


def phase_fixed_eigh(h: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix with deterministic phases.

    Each eigenvector is rotated so its largest-magnitude component is real
    and positive, making downstream quantities (dephased states, coherence)
    independent of LAPACK's arbitrary phase choice.
    """
    w, v = np.linalg.eigh(h)
    for k in range(v.shape[1]):
        col = v[:, k]
        i = int(np.argmax(np.abs(col)))
        ph = col[i] / abs(col[i])
        v[:, k] = col * ph.conjugate()
    return w, v


def gibbs_state(h: np.ndarray, beta: float) -> np.ndarray:
    """exp(-beta*H)/Z, computed in the eigenbasis for numerical safety."""
    w, v = np.linalg.eigh(h)
    # subtract the ground energy before exponentiating
    ex = np.exp(-beta * (w - w.min()))
    ex /= ex.sum()
    return (v * ex) @ dag(v)


def von_neumann_entropy(rho: np.ndarray) -> float:
    """-Tr[rho ln rho] (natural log); tiny negative eigenvalues are clipped."""
    w = np.linalg.eigvalsh(rho)
    w = np.clip(w.real, 0.0, None)
    w = w[w > 0.0]
    return float(-(w * np.log(w)).sum())


def trace_distance(rho: np.ndarray, sigma: np.ndarray) -> float:
    w = np.linalg.eigvalsh(rho - sigma)
    return float(0.5 * np.abs(w).sum())


def entropy_production(j_hot: float, j_cold: float, beta_h: float, beta_c: float) -> float:
    """Entropy production rate for heat currents flowing out of the baths."""
    return -beta_c * j_cold - beta_h * j_hot


def relative_entropy_of_coherence(rho: np.ndarray, h: np.ndarray) -> float:
    """S(rho_dephased) - S(rho) in the eigenbasis of ``h``; always >= 0."""
    _, v = phase_fixed_eigh(h)
    pops = np.real(np.einsum("ik,ij,jk->k", v.conj(), rho, v))
    pops = np.clip(pops, 0.0, None)
    pops = pops[pops > 0.0]
    s_diag = float(-(pops * np.log(pops)).sum())
    c = s_diag - von_neumann_entropy(rho)
    return max(c, 0.0)
