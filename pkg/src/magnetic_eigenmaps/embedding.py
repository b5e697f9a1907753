"""Phase coordinates on the torus, gauge fixing and circular clustering."""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .eigensolver import EigenSystem
from .exceptions import IndexOutOfRangeError, LabelMismatchError

__all__ = [
    "TWO_PI",
    "ZERO_MODULUS",
    "TorusEmbedding",
    "wrap_phase",
    "gauge_fix",
    "phases",
    "torus_distance",
    "circular_distance",
    "circular_kmeans",
    "circular_cluster_score",
    "modulus_variability",
]

TWO_PI = 2.0 * np.pi
ZERO_MODULUS = 1e-12
# relative tolerance for "largest modulus" ties during gauge fixing
_TIE_RTOL = 1e-9


@dataclass(frozen=True, eq=False)
class TorusEmbedding:
    """Per-node phases in ``[0, 2*pi)`` for a selection of eigenvectors.

    ``coords[:, c]`` is the gauge-fixed phase of eigenvector ``indices[c]``;
    ``gauge[c]`` is the rotation ``alpha`` that was applied to it and
    ``flagged[:, c]`` marks nodes whose modulus was below ``ZERO_MODULUS``.
    """

    coords: np.ndarray
    moduli: np.ndarray
    gauge: np.ndarray
    indices: tuple
    flagged: np.ndarray
    g: object = None

    def column(self, index: int) -> int:
        """Column position of eigen index ``index``."""
        try:
            return self.indices.index(index)
        except ValueError:
            raise IndexOutOfRangeError(f"eigen index {index} not in embedding {self.indices}") from None

    def axis(self, index: int) -> np.ndarray:
        return self.coords[:, self.column(index)]


def wrap_phase(theta) -> np.ndarray:
    """Map angles to ``[0, 2*pi)``."""
    out = np.mod(np.asarray(theta, dtype=float), TWO_PI)
    # np.mod can round tiny negatives up to exactly 2*pi
    return np.where(out >= TWO_PI, 0.0, out)


def gauge_fix(vec) -> tuple[np.ndarray, float]:
    """Rotate ``vec`` so that its largest-modulus entry is real and positive.

    Moduli within a relative ``1e-9`` of the maximum count as ties and the
    smallest node index wins, which keeps the choice stable when ``vec`` is
    multiplied by an arbitrary ``exp(i*alpha)``.  Returns the rotated vector
    and the angle ``alpha`` applied.
    """
    vec = np.asarray(vec, dtype=complex)
    mod = np.abs(vec)
    top = mod.max()
    ref = int(np.flatnonzero(mod >= top * (1 - _TIE_RTOL))[0])
    alpha = -float(np.angle(vec[ref]))
    rotated = vec * (np.conj(vec[ref]) / mod[ref])
    rotated[ref] = mod[ref]
    return rotated, alpha


def phases(
    es: EigenSystem,
    indices: Sequence[int] = (0, 1),
    rotate: dict[int, float] | None = None,
) -> TorusEmbedding:
    """Gauge-fixed phases of the generalized eigenvectors ``phi_k``, ``k in indices``.

    ``rotate`` optionally shifts the cut of a given eigen index by an angle
    after gauge fixing.  Nodes with ``|phi_k,i| < 1e-12`` get phase 0 and are
    flagged, since their phase is undefined.
    """
    indices = tuple(int(i) for i in indices)
    for i in indices:
        if not 0 <= i < es.k:
            raise IndexOutOfRangeError(f"eigen index {i} outside computed range [0, {es.k})")
    n = es.phi.shape[0]
    coords = np.zeros((n, len(indices)))
    moduli = np.zeros((n, len(indices)))
    gauge = np.zeros(len(indices))
    flagged = np.zeros((n, len(indices)), dtype=bool)
    rotate = rotate or {}
    for c, k in enumerate(indices):
        rotated, alpha = gauge_fix(es.phi[:, k])
        mod = np.abs(es.phi[:, k])
        small = mod < ZERO_MODULUS
        theta = wrap_phase(np.angle(rotated) + rotate.get(k, 0.0))
        theta[small] = 0.0
        coords[:, c] = theta
        moduli[:, c] = mod
        gauge[c] = alpha
        flagged[:, c] = small
        if small.any():
            warnings.warn(
                f"{int(small.sum())} node(s) have |phi_{k}| < {ZERO_MODULUS:g}; their phase is set to 0",
                RuntimeWarning,
                stacklevel=2,
            )
    return TorusEmbedding(
        coords=coords, moduli=moduli, gauge=gauge, indices=indices, flagged=flagged, g=es.g
    )


def circular_distance(a, b) -> np.ndarray:
    """Elementwise wrap-around distance ``min(|a-b|, 2*pi - |a-b|)``."""
    d = np.abs(np.mod(np.asarray(a, dtype=float) - np.asarray(b, dtype=float), TWO_PI))
    return np.minimum(d, TWO_PI - d)


def torus_distance(p, q) -> np.ndarray | float:
    """Euclidean combination of per-axis wrap-around distances (last axis = coordinates)."""
    d = circular_distance(p, q)
    out = np.sqrt(np.sum(np.atleast_1d(d) ** 2, axis=-1))
    return float(out) if np.ndim(out) == 0 else out


def circular_kmeans(theta, k: int, n_init: int = 50, max_iter: int = 100, seed: int = 0):
    """K-means on the circle with wrap-around distance.

    Centers are updated to the direction of the mean unit vector of their
    members.  Returns ``(labels, centers, inertia)`` of the best of ``n_init``
    k-means++ seeded runs.
    """
    theta = wrap_phase(theta)
    n = len(theta)
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= {n}, got k={k}")
    rng = np.random.default_rng(seed)
    z = np.exp(1j * theta)
    best = None
    for _ in range(n_init):
        centers = np.empty(k)
        centers[0] = theta[rng.integers(n)]
        for c in range(1, k):
            d2 = np.min(circular_distance(theta[:, None], centers[None, :c]) ** 2, axis=1)
            total = d2.sum()
            pick = rng.integers(n) if total <= 0 else rng.choice(n, p=d2 / total)
            centers[c] = theta[pick]
        labels = None
        for _ in range(max_iter):
            new = np.argmin(circular_distance(theta[:, None], centers[None, :]), axis=1)
            if labels is not None and np.array_equal(new, labels):
                break
            labels = new
            for c in range(k):
                members = z[labels == c]
                if len(members):
                    resultant = members.sum()
                    if abs(resultant) > 1e-12:
                        centers[c] = np.angle(resultant)
        inertia = float(np.sum(circular_distance(theta, centers[labels]) ** 2))
        if best is None or inertia < best[2] - 1e-12:
            best = (labels.copy(), wrap_phase(centers), inertia)
    return best


def _purity(clusters, labels) -> float:
    total = 0
    for c in np.unique(clusters):
        _, counts = np.unique(labels[clusters == c], return_counts=True)
        total += counts.max()
    return total / len(labels)


def circular_cluster_score(emb, labels, axis: int = 0, n_init: int = 50, seed: int = 0) -> float:
    """Purity of a circular k-means clustering of one phase axis against ``labels``.

    ``emb`` is a :class:`TorusEmbedding` (``axis`` is then an eigen index) or a
    plain array of angles.  ``k`` equals the number of distinct labels.
    """
    theta = emb.axis(axis) if isinstance(emb, TorusEmbedding) else np.asarray(emb, dtype=float)
    labels = np.asarray(labels)
    if labels.shape != theta.shape:
        raise LabelMismatchError(f"{labels.shape[0] if labels.ndim else 0} labels for {len(theta)} nodes")
    classes = np.unique(labels)
    clusters, _, _ = circular_kmeans(theta, len(classes), n_init=n_init, seed=seed)
    return float(_purity(clusters, labels))


def modulus_variability(phi0, degrees) -> float:
    """Degree-weighted relative variance of ``|phi_0|`` around its mean ``mu_0``.

    ``sum_i d_i (|phi_i| - mu)^2 / sum_i d_i |phi_i|^2`` with
    ``mu = sum_j d_j |phi_j| / vol``.  Invariant under rescaling of ``phi0``.
    """
    m = np.abs(np.asarray(phi0))
    d = np.asarray(degrees, dtype=float)
    mu = np.dot(d, m) / d.sum()
    return float(np.dot(d, (m - mu) ** 2) / np.dot(d, m**2))
