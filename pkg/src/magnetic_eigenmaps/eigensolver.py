"""Solvers for the generalized problem ``L phi = lambda D phi``.

Both paths work on the normalized Hermitian matrix ``L_N`` and recover the
generalized eigenvectors as ``phi = D^{-1/2} psi``.  :func:`eig_dense` is the
reference; :func:`eig_iterative` runs block power iteration on
``M = 2I - L_N`` (spectrum in ``[0, 2]``), so the smallest eigenvalues of
``L_N`` become the dominant ones of ``M``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg as la

from .exceptions import DenseLimitExceededError, NoConvergenceError, ZeroDegreeError, ZeroVectorError
from .laplacian import MagneticLaplacian, normalize

__all__ = [
    "DENSE_LIMIT",
    "EigenSystem",
    "eig_dense",
    "eig_iterative",
    "rayleigh_quotient",
]

logger = logging.getLogger(__name__)

DENSE_LIMIT = 4096
CLUSTER_GAP = 1e-8


@dataclass(frozen=True, eq=False)
class EigenSystem:
    """Lowest eigenpairs of ``L_N``.

    Attributes
    ----------
    eigenvalues : ndarray (k,)
        Ascending.
    psi : ndarray (n, k)
        Orthonormal eigenvectors of ``L_N`` (columns).
    phi : ndarray (n, k)
        Generalized eigenvectors ``D^{-1/2} psi``.
    residuals : ndarray (k,)
        ``||L_N psi_k - lambda_k psi_k||_2``.
    """

    eigenvalues: np.ndarray
    psi: np.ndarray
    phi: np.ndarray
    residuals: np.ndarray
    degrees: np.ndarray
    g: object = None
    method: str = "dense"
    clusters: list = field(default_factory=list)

    @property
    def k(self) -> int:
        return len(self.eigenvalues)


def _clusters(values: np.ndarray, gap: float = CLUSTER_GAP) -> list[list[int]]:
    """Groups of consecutive indices whose eigenvalues differ by less than ``gap``."""
    groups, current = [], [0] if len(values) else []
    for i in range(1, len(values)):
        if values[i] - values[i - 1] < gap:
            current.append(i)
        else:
            groups.append(current)
            current = [i]
    if current:
        groups.append(current)
    return [grp for grp in groups if len(grp) > 1]


def _finish(lap, values, vecs, method):
    ln = lap.normalized
    residuals = np.linalg.norm(ln @ vecs - vecs * values, axis=0)
    phi = vecs / np.sqrt(lap.degrees)[:, None]
    clusters = _clusters(values)
    if clusters:
        logger.info("degenerate eigenvalue clusters (gap < %g): %s", CLUSTER_GAP, clusters)
    return EigenSystem(
        eigenvalues=values,
        psi=vecs,
        phi=phi,
        residuals=residuals,
        degrees=lap.degrees,
        g=lap.g,
        method=method,
        clusters=clusters,
    )


def _normalized(lap: MagneticLaplacian) -> MagneticLaplacian:
    return lap if lap.normalized is not None else normalize(lap)


def eig_dense(lap: MagneticLaplacian, k: int | None = None, dense_limit: int = DENSE_LIMIT) -> EigenSystem:
    """Full Hermitian eigendecomposition of ``L_N``, truncated to the ``k`` smallest pairs."""
    if lap.n > dense_limit:
        raise DenseLimitExceededError(f"n={lap.n} exceeds the dense limit {dense_limit}")
    lap = _normalized(lap)
    k = lap.n if k is None else min(int(k), lap.n)
    values, vecs = la.eigh(lap.normalized.toarray(), subset_by_index=[0, k - 1], driver="evr")
    return _finish(lap, values, vecs, "dense")


def _orthonormalize(X, locked):
    # two passes of classical Gram-Schmidt against the locked block, then QR
    for _ in range(2):
        if locked.shape[1]:
            X = X - locked @ (locked.conj().T @ X)
    Q, _ = np.linalg.qr(X)
    return Q


def eig_iterative(
    lap: MagneticLaplacian,
    k: int,
    tol: float = 1e-10,
    max_iter: int = 10_000,
    block: int | None = None,
    seed: int = 0,
) -> EigenSystem:
    """``k`` smallest eigenpairs of ``L_N`` by block power iteration with locking.

    Each sweep multiplies the active block by ``M = 2I - L_N``, applies a
    Rayleigh-Ritz rotation and locks the leading Ritz vectors whose residual
    drops below ``tol``; locked vectors are deflated from the active block by
    Gram-Schmidt.  The start block is drawn from ``numpy.random.default_rng(seed)``.

    Raises
    ------
    NoConvergenceError
        When ``max_iter`` sweeps do not converge all ``k`` pairs.
    """
    lap = _normalized(lap)
    n = lap.n
    k = int(k)
    if not 1 <= k <= n:
        raise ValueError(f"k must be in [1, {n}], got {k}")
    ln = lap.normalized
    p = min(n, block if block is not None else k + max(k, 4))
    rng = np.random.default_rng(seed)
    X = rng.standard_normal((n, p)) + 1j * rng.standard_normal((n, p))
    locked = np.zeros((n, 0), dtype=complex)
    locked_vals: list[float] = []
    X = _orthonormalize(X, locked)
    residuals = np.full(p, np.inf)

    def apply_m(V):
        return 2.0 * V - ln @ V

    for _ in range(max_iter):
        Y = apply_m(X)
        H = X.conj().T @ Y
        H = (H + H.conj().T) / 2
        theta, V = la.eigh(H)
        order = np.argsort(theta)[::-1]
        theta, V = theta[order], V[:, order]
        X = X @ V
        Y = Y @ V
        residuals = np.linalg.norm(Y - X * theta, axis=0)
        n_new = 0
        while n_new < X.shape[1] and len(locked_vals) + n_new < k and residuals[n_new] <= tol:
            n_new += 1
        if n_new:
            locked = np.column_stack([locked, X[:, :n_new]])
            locked_vals.extend((2.0 - theta[:n_new]).tolist())
            if len(locked_vals) >= k:
                break
            Y = Y[:, n_new:]
            width = min(p, n - locked.shape[1])
            if Y.shape[1] < width:
                extra = rng.standard_normal((n, width - Y.shape[1])) * (1 + 0j)
                Y = np.column_stack([Y, extra])
            Y = Y[:, :width]
        X = _orthonormalize(Y, locked)
    else:
        raise NoConvergenceError(len(locked_vals), residuals[: k - len(locked_vals)])

    values = np.asarray(locked_vals)
    vecs = locked
    order = np.argsort(values, kind="stable")
    return _finish(lap, values[order], vecs[:, order], "power")


def rayleigh_quotient(lap: MagneticLaplacian, f) -> float:
    """``(f^† L f) / (f^† D f)`` as a real number."""
    f = np.asarray(f, dtype=complex)
    if not np.any(f):
        raise ZeroVectorError("Rayleigh quotient of the zero vector")
    denom = np.real(np.vdot(f, lap.degrees * f))
    if denom <= 0:
        raise ZeroDegreeError(np.flatnonzero(lap.degrees <= 0))
    num = np.vdot(f, lap.matrix @ f)
    return float(np.real(num) / denom)
