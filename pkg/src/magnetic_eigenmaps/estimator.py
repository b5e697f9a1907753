"""Scikit-learn style estimators wrapping the embedding pipeline.

Both estimators are transductive, like :class:`sklearn.manifold.SpectralEmbedding`:
``fit`` takes a graph (a :class:`~magnetic_eigenmaps.graph.DirectedGraph` or a
square adjacency matrix) and stores the embedding of its nodes in
``embedding_``; ``transform`` only returns the coordinates of the fitted graph.
"""

from __future__ import annotations

import warnings

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .eigensolver import eig_dense, eig_iterative
from .embedding import circular_cluster_score, phases
from .graph import symmetrize
from .laplacian import as_charge, build_magnetic_laplacian, normalize
from .validation import check_axes, check_graph, prepare_graph

__all__ = ["MagneticEigenmaps", "DiffusionMaps", "solve"]


def solve(lap, k, solver="dense", tol=1e-10, max_iter=10_000, seed=0):
    """Lowest ``k`` eigenpairs with the requested solver."""
    if solver == "dense":
        return eig_dense(lap, k=k)
    if solver in ("power", "iterative"):
        return eig_iterative(lap, k=k, tol=tol, max_iter=max_iter, seed=seed)
    raise ValueError(f"unknown solver {solver!r}; use 'dense' or 'power'")


class _GraphEmbedding(TransformerMixin, BaseEstimator, auto_wrap_output_keys=None):
    def _prepare(self, X):
        graph = check_graph(X)
        graph, kept = prepare_graph(graph, drop_isolated=self.drop_isolated)
        self.graph_ = graph
        self.nodes_ = kept
        self.n_nodes_ = graph.n
        return graph

    def transform(self, X=None):
        """Coordinates of the fitted nodes; ``X`` must be omitted or the fitted graph."""
        check_is_fitted(self, "embedding_")
        if X is not None and check_graph(X) != self._input_graph:
            raise ValueError(f"{type(self).__name__} is transductive: transform only the fitted graph")
        return self._coordinates()

    def fit_transform(self, X, y=None):
        return self.fit(X, y).transform()


class MagneticEigenmaps(_GraphEmbedding):
    """Embed a directed graph on a torus by the phases of magnetic eigenvectors.

    Parameters
    ----------
    charge : Fraction, str or float, default="1/4"
        Charge ``g`` in ``[0, 1/2]``.
    n_eigenvectors : int, default=2
        Number of lowest eigenpairs computed.
    axes : tuple of int, default=(0, 1)
        Eigen indices whose phases form the coordinates.
    solver : {"dense", "power"}, default="dense"
    tol, max_iter : float, int
        Power-method residual tolerance and sweep limit.
    random_state : int, default=0
        Seed for the power-method start block.
    drop_isolated : bool, default=False
        Drop zero-degree nodes instead of rejecting the graph.

    Attributes
    ----------
    embedding_ : TorusEmbedding
    eigenvalues_ : ndarray of shape (n_eigenvectors,)
    eigenvectors_ : ndarray of shape (n_nodes_, n_eigenvectors)
        Generalized eigenvectors ``phi_k``.
    laplacian_ : MagneticLaplacian
    nodes_ : ndarray
        Indices (in the input graph) of the embedded nodes.
    """

    def __init__(
        self,
        charge="1/4",
        n_eigenvectors=2,
        axes=(0, 1),
        solver="dense",
        tol=1e-10,
        max_iter=10_000,
        random_state=0,
        drop_isolated=False,
    ):
        self.charge = charge
        self.n_eigenvectors = n_eigenvectors
        self.axes = axes
        self.solver = solver
        self.tol = tol
        self.max_iter = max_iter
        self.random_state = random_state
        self.drop_isolated = drop_isolated

    def fit(self, X, y=None):
        g = as_charge(self.charge)
        k = int(self.n_eigenvectors)
        axes = check_axes(self.axes, k)
        self._input_graph = check_graph(X)
        graph = self._prepare(self._input_graph)
        if g == 0:
            warnings.warn("g = 0 carries no directional information; phases are constant", UserWarning, stacklevel=2)
        lap = normalize(build_magnetic_laplacian(symmetrize(graph), g))
        es = solve(lap, min(k, graph.n), self.solver, self.tol, self.max_iter, self.random_state)
        self.charge_ = g
        self.laplacian_ = lap
        self.eigensystem_ = es
        self.eigenvalues_ = es.eigenvalues
        self.eigenvectors_ = es.phi
        self.embedding_ = phases(es, axes)
        return self

    def _coordinates(self):
        return self.embedding_.coords

    def score(self, X, y, axis=None):
        """Circular cluster purity of ``y`` on one phase axis (default: the first axis)."""
        check_is_fitted(self, "embedding_")
        y = np.asarray(y)
        if len(y) == self._input_graph.n:
            y = y[self.nodes_]
        axis = self.embedding_.indices[0] if axis is None else axis
        return circular_cluster_score(self.embedding_, y, axis=axis)


class DiffusionMaps(_GraphEmbedding):
    """Real eigenvector coordinates of the normalized combinatorial Laplacian (``g = 0``).

    The constant eigenvector ``phi_0`` is skipped; coordinates are
    ``phi_{start} .. phi_{start + n_components - 1}`` with ``start=1`` by default,
    each sign-fixed so its largest-magnitude entry is positive.
    """

    def __init__(self, n_components=2, start=1, drop_isolated=False):
        self.n_components = n_components
        self.start = start
        self.drop_isolated = drop_isolated

    def fit(self, X, y=None):
        self._input_graph = check_graph(X)
        graph = self._prepare(self._input_graph)
        stop = int(self.start) + int(self.n_components)
        if int(self.start) < 1:
            raise ValueError("start must be >= 1: phi_0 is constant")
        lap = normalize(build_magnetic_laplacian(symmetrize(graph), 0))
        ln = lap.normalized.toarray().real
        values, vecs = np.linalg.eigh(ln)
        phi = vecs / np.sqrt(lap.degrees)[:, None]
        for c in range(phi.shape[1]):
            ref = int(np.argmax(np.abs(phi[:, c]) >= np.abs(phi[:, c]).max() * (1 - 1e-9)))
            if phi[ref, c] < 0:
                phi[:, c] = -phi[:, c]
        self.eigenvalues_ = values[:stop]
        self.eigenvectors_ = phi[:, :stop]
        self.embedding_ = phi[:, int(self.start):stop]
        return self

    def _coordinates(self):
        return self.embedding_
