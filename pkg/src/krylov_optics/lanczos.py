"""Lanczos tridiagonalization and the survival-amplitude/moments route.

Two independent ways to the same coefficients:

* :func:`tridiagonalize` - direct three-term recursion with full
  reorthogonalization against every prior basis vector (dimensions here are
  tiny, so robustness wins over speed);
* :func:`moments` + :func:`lanczos_from_moments` - power moments of the seed
  state turned into recurrence coefficients through a Cholesky factorization
  of the Hankel moment matrix.

Exhaustion of the Krylov space (a vanishing off-diagonal) terminates the
recursion and is reported as a successful, shorter result.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotHermitian, NumericalBreakdown, ZeroSeed


@dataclass(frozen=True)
class TridiagonalData:
    """Lanczos output: diagonal a, off-diagonal b (len(a)-1), optional basis."""

    a: np.ndarray
    b: np.ndarray
    basis: np.ndarray | None = None   # shape (d', dim); rows are |v_n>

    @property
    def dim(self) -> int:
        return len(self.a)

    def matrix(self) -> np.ndarray:
        """Dense tridiagonal matrix built from the coefficients."""
        t = np.diag(self.a.astype(complex))
        if len(self.b):
            t += np.diag(self.b, 1) + np.diag(self.b, -1)
        return t


@dataclass(frozen=True)
class MomentSequence:
    """mu_n = <seed| (iH)^n |seed>, n = 0..count."""

    mu: np.ndarray

    def __len__(self) -> int:
        return len(self.mu)


def _require_hermitian(h: np.ndarray, tol: float = 1e-10) -> np.ndarray:
    h = np.asarray(h, dtype=complex)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise ValueError("H must be a square matrix")
    scale = max(1.0, float(np.max(np.abs(h))))
    defect = float(np.max(np.abs(h - h.conj().T)))
    if defect > tol * scale:
        raise NotHermitian(f"Hermiticity defect {defect:.3e} exceeds {tol:g}*|H|")
    return h


def _normalized_seed(seed: np.ndarray, dim: int) -> np.ndarray:
    v = np.asarray(seed, dtype=complex).reshape(-1)
    if v.shape[0] != dim:
        raise ValueError("seed length does not match H")
    norm = np.linalg.norm(v)
    if norm < 1e-300:
        raise ZeroSeed("seed vector has zero norm")
    return v / norm


def tridiagonalize(h: np.ndarray, seed: np.ndarray,
                   breakdown_tol: float | None = None) -> TridiagonalData:
    """Direct Lanczos recursion with full reorthogonalization.

    Halts when the next off-diagonal drops to breakdown_tol (default
    1e-12 * ||H||), i.e. when the Krylov space is exhausted.
    """
    h = _require_hermitian(h)
    dim = h.shape[0]
    v = _normalized_seed(seed, dim)
    norm_h = float(np.linalg.norm(h, 2))
    if breakdown_tol is None:
        breakdown_tol = 1e-12 * max(norm_h, 1.0)

    basis = [v]
    a: list[float] = []
    b: list[float] = []
    w = h @ v
    while True:
        an = float(np.real(np.vdot(basis[-1], w)))
        a.append(an)
        w = w - an * basis[-1]
        if len(basis) > 1:
            w = w - b[-1] * basis[-2]
        # full reorthogonalization, twice for good measure
        for _ in range(2):
            for u in basis:
                w = w - np.vdot(u, w) * u
        bn = float(np.linalg.norm(w))
        if bn <= breakdown_tol or len(basis) == dim:
            break
        b.append(bn)
        v = w / bn
        basis.append(v)
        w = h @ v
    return TridiagonalData(np.array(a), np.array(b), np.array(basis))


def survival_amplitude(h: np.ndarray, seed: np.ndarray, t: float) -> complex:
    """S(t) = <seed| e^{+iHt} |seed> via the spectral decomposition of H."""
    h = _require_hermitian(h)
    v = _normalized_seed(seed, h.shape[0])
    energies, modes = np.linalg.eigh(h)
    weights = np.abs(modes.conj().T @ v) ** 2
    return complex(np.sum(weights * np.exp(1j * energies * t)))


def moments(h: np.ndarray, seed: np.ndarray, count: int) -> MomentSequence:
    """Moments mu_n = <seed|(iH)^n|seed> for n = 0..count by repeated application."""
    h = _require_hermitian(h)
    v = _normalized_seed(seed, h.shape[0])
    mu = np.empty(count + 1, dtype=complex)
    w = v.copy()
    mu[0] = 1.0
    for n in range(1, count + 1):
        w = 1j * (h @ w)
        mu[n] = np.vdot(v, w)
    return MomentSequence(mu)


def lanczos_from_moments(mu: MomentSequence | np.ndarray,
                         breakdown_tol: float = 1e-8) -> TridiagonalData:
    """Recover (a_n, b_n) from the moment sequence (no basis vectors).

    The real power moments M_n = mu_n / i^n form a Hankel matrix whose
    Cholesky factor carries the three-term recurrence: with M = R^T R,
    a_k = R[k,k+1]/R[k,k] - R[k-1,k]/R[k-1,k-1] and b_k = R[k,k]/R[k-1,k-1].
    A non-positive pivot within tolerance terminates the recursion (space
    exhausted); a clearly negative one signals ill-conditioning.

    In double precision the scheme is trustworthy for roughly count <= 24
    (the Hankel matrix is notoriously ill-conditioned beyond that).
    """
    if isinstance(mu, MomentSequence):
        mu = mu.mu
    mu = np.asarray(mu, dtype=complex)
    if len(mu) < 3:
        raise ValueError("need at least moments mu_0..mu_2")
    powers = 1j ** np.arange(len(mu))
    m_real = mu / powers
    if np.max(np.abs(m_real.imag)) > 1e-8 * max(1.0, np.max(np.abs(m_real.real))):
        raise NumericalBreakdown("mu_n / i^n is not real: not a Hermitian moment set")
    m = m_real.real
    size = (len(mu) - 1) // 2 + 1          # Hankel order from available moments
    hankel = np.empty((size, size))
    for i in range(size):
        hankel[i] = m[i:i + size]

    scale = m[2] if m[2] > 0 else 1.0      # ~ ||H seed||^2, sets the pivot scale
    r = np.zeros((size, size))
    d_eff = size
    for i in range(size):
        pivot2 = hankel[i, i] - r[:i, i] @ r[:i, i]
        floor = breakdown_tol * max(scale ** i, 1e-300)
        if pivot2 <= floor:
            if pivot2 < -floor:
                raise NumericalBreakdown(
                    f"negative Hankel pivot at step {i}: ill-conditioned moments")
            d_eff = i
            break
        r[i, i] = np.sqrt(pivot2)
        for j in range(i + 1, size):
            r[i, j] = (hankel[i, j] - r[:i, i] @ r[:i, j]) / r[i, i]
    if d_eff == 0:
        raise NumericalBreakdown("moment matrix has no positive pivot")

    a = np.empty(d_eff)
    b = np.empty(max(d_eff - 1, 0))
    for k in range(d_eff):
        lead = r[k, k + 1] / r[k, k] if k + 1 < size else 0.0
        prev = r[k - 1, k] / r[k - 1, k - 1] if k > 0 else 0.0
        a[k] = lead - prev
        if k > 0:
            b[k - 1] = r[k, k] / r[k - 1, k - 1]
    return TridiagonalData(a, b, None)
