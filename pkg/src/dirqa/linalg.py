"""Dense kernels: matrix exponential, singular values, Perron pairs, Katz solves."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import DomainError, NumericError

POWER_TOL = 1e-10
POWER_MAX_ITER = 10_000
KATZ_RESIDUAL = 1e-10


def _square(m) -> np.ndarray:
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DomainError(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise DomainError("matrix has non-finite entries")
    return m


def expm(m) -> np.ndarray:
    """Matrix exponential (scaling and squaring with a diagonal Pade approximant)."""
    m = _square(m)
    if not m.any():
        return np.eye(m.shape[0])
    with np.errstate(over="raise", invalid="raise"):
        try:
            out = scipy.linalg.expm(m)
        except FloatingPointError as exc:
            raise NumericError(f"matrix exponential overflowed: {exc}") from None
    if not np.all(np.isfinite(out)):
        raise NumericError("matrix exponential overflowed")
    return out


def expm_series(m, terms: int = 30) -> np.ndarray:
    """Truncated Taylor series sum_{k<=terms} M^k/k!."""
    m = _square(m)
    out = np.eye(m.shape[0])
    term = np.eye(m.shape[0])
    for k in range(1, terms + 1):
        term = term @ m / k
        out = out + term
    return out


def singular_values(m) -> np.ndarray:
    """Singular values in descending order."""
    m = np.asarray(m, dtype=float)
    if m.size == 0:
        return np.zeros(0)
    return np.linalg.svd(m, compute_uv=False)


def spectral_radius(m) -> float:
    m = _square(m)
    if m.shape[0] == 0:
        return 0.0
    return float(np.max(np.abs(np.linalg.eigvals(m))))


@dataclass(frozen=True)
class EigenPair:
    value: float
    vector: np.ndarray | None
    degenerate: bool
    iterations: int
    residual: float


def dominant_eigenpair(m, side: str = "right", tol: float = POWER_TOL,
                       max_iter: int = POWER_MAX_ITER) -> EigenPair:
    """Perron value and nonnegative unit eigenvector by shifted power iteration.

    Iterates with M + I so that cyclic spectra (directed cycles) still
    converge; the reported value is for M itself. A defective Perron value
    falls back to projecting onto the eigenspace. A zero spectral radius
    is reported as degenerate with no vector.
    """
    m = _square(m)
    if side not in ("right", "left"):
        raise DomainError(f"side must be 'right' or 'left', got {side!r}")
    if np.any(m < 0):
        raise DomainError("dominant_eigenpair expects a nonnegative matrix")
    if side == "left":
        m = m.T
    n = m.shape[0]
    if n == 0 or spectral_radius(m) <= 1e-12:
        return EigenPair(0.0, None, True, 0, 0.0)
    shifted = m + np.eye(n)
    x = np.full(n, 1.0 / np.sqrt(n))
    lam = 0.0
    for it in range(1, max_iter + 1):
        y = shifted @ x
        y /= np.linalg.norm(y)
        delta = np.linalg.norm(y - x)
        x = y
        if delta < tol:
            break
    lam = float(x @ (m @ x))
    residual = float(np.linalg.norm(m @ x - lam * x))
    if residual > 1e-8:
        # defective Perron value: power iteration only creeps towards the
        # eigenvector, so project the iterate onto the null space of M - rho I
        lam = spectral_radius(m)
        _, sv, vt = np.linalg.svd(m - lam * np.eye(n))
        null = vt[sv <= 1e-8 * max(1.0, sv[0])]
        if len(null):
            x = null.T @ (null @ x)
            x /= np.linalg.norm(x)
        residual = float(np.linalg.norm(m @ x - lam * x))
        if residual > 1e-8 or x.min() < -1e-8 and x.max() > 1e-8:
            raise NumericError(f"power iteration did not converge, residual {residual:.3e}")
    if x.sum() < 0:
        x = -x
    x = np.clip(x, 0.0, None)
    x /= np.linalg.norm(x)
    return EigenPair(lam, x, False, it, residual)


def default_katz_alpha(m) -> float:
    lam = spectral_radius(m)
    return 0.9 / lam if lam > 1e-12 else 0.1


def katz_solve(m, alpha: float | None = None, side: str = "out") -> np.ndarray:
    """out: (I - aM)^-1 1; in: 1^T (I - aM)^-1."""
    m = _square(m)
    if side not in ("in", "out"):
        raise DomainError(f"side must be 'in' or 'out', got {side!r}")
    if alpha is None:
        alpha = default_katz_alpha(m)
    n = m.shape[0]
    a = np.eye(n) - alpha * m
    if side == "in":
        a = a.T
    ones = np.ones(n)
    try:
        x = scipy.linalg.solve(a, ones)
    except (np.linalg.LinAlgError, scipy.linalg.LinAlgError) as exc:
        raise NumericError(f"Katz system is singular: {exc}") from None
    residual = float(np.linalg.norm(a @ x - ones, np.inf))
    if not np.all(np.isfinite(x)) or residual > KATZ_RESIDUAL * max(1.0, float(np.abs(x).max())):
        raise NumericError(f"Katz solve residual {residual:.3e} too large (alpha={alpha})")
    return x
