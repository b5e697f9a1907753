"""Binary directed graphs, their symmetrization and spanning trees.

A directed graph is stored one record per unordered pair ``{i, j}`` (``i < j``)
with two presence flags ``w_ij`` and ``w_ji``.  Everything downstream works on
the :class:`SymmetrizedView`, which splits the weights into the symmetric part
``wbar_ij = (w_ij + w_ji) / 2`` and the skew-symmetric edge flow
``a_ij = w_ij - w_ji``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np
import scipy.sparse as sp

from .exceptions import GraphError, NotConnectedError, SelfLoopError

__all__ = [
    "DirectedGraph",
    "SymmetrizedView",
    "SpanningTree",
    "symmetrize",
    "is_connected",
    "connected_components",
    "spanning_tree",
    "tree_path",
]


@dataclass(frozen=True, eq=False)
class DirectedGraph:
    """Immutable binary digraph without self-loops.

    Parameters
    ----------
    n : int
        Number of nodes, indexed ``0 .. n-1``.
    pairs : ndarray of shape (m, 2)
        Unordered node pairs ``(i, j)`` with ``i < j``, lexicographically sorted.
    forward, backward : ndarray of bool, shape (m,)
        ``forward[e]`` is ``w_ij`` (link ``i -> j``), ``backward[e]`` is ``w_ji``.
        At least one of the two is set for every stored pair.
    ids : tuple of str
        External node identifiers, one per index.
    """

    n: int
    pairs: np.ndarray
    forward: np.ndarray
    backward: np.ndarray
    ids: tuple = field(default=())

    def __post_init__(self):
        if self.n < 1:
            raise GraphError("a graph needs at least one node")
        pairs = np.asarray(self.pairs, dtype=np.int64).reshape(-1, 2)
        forward = np.asarray(self.forward, dtype=bool).reshape(-1)
        backward = np.asarray(self.backward, dtype=bool).reshape(-1)
        if not (len(pairs) == len(forward) == len(backward)):
            raise GraphError("pairs, forward and backward must have equal length")
        if len(pairs):
            if pairs.min() < 0 or pairs.max() >= self.n:
                raise GraphError("node index out of range")
            if np.any(pairs[:, 0] == pairs[:, 1]):
                raise SelfLoopError("self-loops are not allowed")
            if np.any(pairs[:, 0] > pairs[:, 1]):
                raise GraphError("pairs must be stored as (i, j) with i < j")
            if not np.all(forward | backward):
                raise GraphError("every stored pair needs at least one direction")
            keys = pairs[:, 0] * self.n + pairs[:, 1]
            if np.any(np.diff(keys) <= 0):
                raise GraphError("pairs must be unique and sorted")
        ids = tuple(str(i) for i in range(self.n)) if not self.ids else tuple(map(str, self.ids))
        if len(ids) != self.n:
            raise GraphError(f"expected {self.n} node ids, got {len(ids)}")
        for name, arr in (("pairs", pairs), ("forward", forward), ("backward", backward)):
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        object.__setattr__(self, "ids", ids)

    @classmethod
    def from_edges(
        cls,
        edges: Iterable[tuple[int, int]],
        n: int | None = None,
        ids: Sequence[str] | None = None,
    ) -> "DirectedGraph":
        """Build from directed edges ``(i, j)`` meaning a link ``i -> j``.

        Duplicate edges collapse (weights are binary).
        """
        arcs = np.asarray(list(edges), dtype=np.int64).reshape(-1, 2)
        if n is None:
            n = len(ids) if ids is not None else (int(arcs.max()) + 1 if len(arcs) else 1)
        if np.any(arcs[:, 0] == arcs[:, 1]):
            i = int(arcs[arcs[:, 0] == arcs[:, 1]][0, 0])
            raise SelfLoopError(f"self-loop at node {i}")
        lo = np.minimum(arcs[:, 0], arcs[:, 1])
        hi = np.maximum(arcs[:, 0], arcs[:, 1])
        keys = lo * n + hi
        uniq, inv = np.unique(keys, return_inverse=True)
        forward = np.zeros(len(uniq), dtype=bool)
        backward = np.zeros(len(uniq), dtype=bool)
        is_forward = arcs[:, 0] < arcs[:, 1]
        forward[inv[is_forward]] = True
        backward[inv[~is_forward]] = True
        pairs = np.column_stack([uniq // n, uniq % n]) if len(uniq) else np.zeros((0, 2), np.int64)
        return cls(n=int(n), pairs=pairs, forward=forward, backward=backward, ids=tuple(ids or ()))

    @classmethod
    def from_adjacency(cls, W, ids: Sequence[str] | None = None) -> "DirectedGraph":
        """Build from a square (dense or sparse) adjacency; any nonzero ``W[i, j]`` is a link."""
        W = sp.coo_array(W)
        if W.shape[0] != W.shape[1]:
            raise GraphError(f"adjacency must be square, got shape {W.shape}")
        mask = W.data != 0
        rows, cols = W.row[mask], W.col[mask]
        if np.any(rows == cols):
            raise SelfLoopError(f"self-loop at node {int(rows[rows == cols][0])}")
        return cls.from_edges(zip(rows.tolist(), cols.tolist()), n=W.shape[0], ids=ids)

    @property
    def n_edges(self) -> int:
        """``|E|``: number of unordered linked pairs."""
        return len(self.pairs)

    def arcs(self) -> np.ndarray:
        """Directed links as an ``(n_arcs, 2)`` array, in pair order."""
        out = []
        for (i, j), f, b in zip(self.pairs.tolist(), self.forward, self.backward):
            if f:
                out.append((i, j))
            if b:
                out.append((j, i))
        return np.asarray(out, dtype=np.int64).reshape(-1, 2)

    def adjacency(self) -> sp.csr_array:
        """Binary weight matrix ``W`` with ``W[i, j] = w_ij``."""
        arcs = self.arcs()
        data = np.ones(len(arcs))
        return sp.csr_array((data, (arcs[:, 0], arcs[:, 1])), shape=(self.n, self.n))

    def out_degree(self) -> np.ndarray:
        return np.bincount(self.arcs()[:, 0], minlength=self.n)

    def in_degree(self) -> np.ndarray:
        return np.bincount(self.arcs()[:, 1], minlength=self.n)

    def isolated_nodes(self) -> np.ndarray:
        touched = np.zeros(self.n, dtype=bool)
        touched[self.pairs.reshape(-1)] = True
        return np.flatnonzero(~touched)

    def subgraph(self, nodes: Sequence[int]) -> "DirectedGraph":
        """Induced subgraph on ``nodes``, relabeled ``0..len(nodes)-1`` in the given order."""
        nodes = np.asarray(nodes, dtype=np.int64)
        index = np.full(self.n, -1, dtype=np.int64)
        index[nodes] = np.arange(len(nodes))
        arcs = self.arcs()
        keep = (index[arcs[:, 0]] >= 0) & (index[arcs[:, 1]] >= 0)
        arcs = index[arcs[keep]]
        return DirectedGraph.from_edges(
            map(tuple, arcs.tolist()), n=len(nodes), ids=[self.ids[i] for i in nodes]
        )

    def __eq__(self, other):
        if not isinstance(other, DirectedGraph):
            return NotImplemented
        return (
            self.n == other.n
            and self.ids == other.ids
            and np.array_equal(self.pairs, other.pairs)
            and np.array_equal(self.forward, other.forward)
            and np.array_equal(self.backward, other.backward)
        )

    __hash__ = None

    def __repr__(self):
        return f"DirectedGraph(n={self.n}, n_edges={self.n_edges}, n_arcs={len(self.arcs())})"


@dataclass(frozen=True, eq=False)
class SymmetrizedView:
    """Symmetric weights, edge flow, degrees and volume of a :class:`DirectedGraph`.

    ``wbar[e]`` and ``flow[e]`` refer to ``pairs[e] = (i, j)`` with ``i < j``;
    the mirrored entries follow from ``wbar_ji = wbar_ij`` and ``a_ji = -a_ij``.
    """

    graph: DirectedGraph
    pairs: np.ndarray
    wbar: np.ndarray
    flow: np.ndarray
    degrees: np.ndarray
    volume: float

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def n_edges(self) -> int:
        return len(self.pairs)

    def weight_matrix(self) -> sp.csr_array:
        """Sparse symmetric ``Wbar``."""
        i, j = self.pairs[:, 0], self.pairs[:, 1]
        rows = np.concatenate([i, j])
        cols = np.concatenate([j, i])
        data = np.concatenate([self.wbar, self.wbar])
        return sp.csr_array((data, (rows, cols)), shape=(self.n, self.n))

    def flow_matrix(self) -> sp.csr_array:
        """Sparse skew-symmetric edge flow ``A = W - W^T``."""
        i, j = self.pairs[:, 0], self.pairs[:, 1]
        rows = np.concatenate([i, j])
        cols = np.concatenate([j, i])
        data = np.concatenate([self.flow, -self.flow]).astype(float)
        return sp.csr_array((data, (rows, cols)), shape=(self.n, self.n))

    def neighbors(self) -> list[list[tuple[int, int]]]:
        """Adjacency lists of ``(neighbor, pair index)`` sorted by neighbor."""
        adj: list[list[tuple[int, int]]] = [[] for _ in range(self.n)]
        for e, (i, j) in enumerate(self.pairs.tolist()):
            adj[i].append((j, e))
            adj[j].append((i, e))
        for lst in adj:
            lst.sort()
        return adj

    def flow_between(self, i: int, j: int) -> int:
        """``a_ij`` for a linked pair."""
        lo, hi = (i, j) if i < j else (j, i)
        e = self._pair_index(lo, hi)
        return int(self.flow[e]) if i < j else -int(self.flow[e])

    def _pair_index(self, i, j):
        keys = self.pairs[:, 0] * self.n + self.pairs[:, 1]
        pos = int(np.searchsorted(keys, i * self.n + j))
        if pos >= len(keys) or keys[pos] != i * self.n + j:
            raise KeyError((i, j))
        return pos


def symmetrize(g: DirectedGraph) -> SymmetrizedView:
    """Split ``W`` into ``wbar = (W + W^T)/2`` and ``a = W - W^T``."""
    f = g.forward.astype(np.int8)
    b = g.backward.astype(np.int8)
    wbar = (f + b) / 2.0
    flow = (f - b).astype(np.int8)
    degrees = np.zeros(g.n)
    np.add.at(degrees, g.pairs[:, 0], wbar)
    np.add.at(degrees, g.pairs[:, 1], wbar)
    for arr in (wbar, flow, degrees):
        arr.setflags(write=False)
    return SymmetrizedView(
        graph=g,
        pairs=g.pairs,
        wbar=wbar,
        flow=flow,
        degrees=degrees,
        volume=float(degrees.sum()),
    )


def connected_components(g: DirectedGraph) -> list[np.ndarray]:
    """Components of the undirected support, largest first (ties by smallest node)."""
    from scipy.sparse.csgraph import connected_components as _cc

    W = g.adjacency()
    _, labels = _cc(W + W.T, directed=False)
    comps = [np.flatnonzero(labels == c) for c in np.unique(labels)]
    comps.sort(key=lambda c: (-len(c), c[0]))
    return comps


def is_connected(g: DirectedGraph) -> bool:
    """True iff the undirected support is connected (BFS from node 0)."""
    if g.n == 1:
        return True
    sym_adj = symmetrize(g).neighbors()
    seen = np.zeros(g.n, dtype=bool)
    seen[0] = True
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for v, _ in sym_adj[u]:
            if not seen[v]:
                seen[v] = True
                queue.append(v)
    return bool(seen.all())


@dataclass(frozen=True, eq=False)
class SpanningTree:
    """BFS spanning tree with its cotree.

    ``tree_edges`` and ``cotree_edges`` hold pair indices into the
    :class:`SymmetrizedView`; ``parent[root] == -1`` and ``depth`` is the BFS depth.
    """

    n: int
    root: int
    pairs: np.ndarray
    tree_edges: np.ndarray
    cotree_edges: np.ndarray
    parent: np.ndarray
    depth: np.ndarray
    order: np.ndarray

    @property
    def beta1(self) -> int:
        return len(self.cotree_edges)

    def tree_pairs(self) -> np.ndarray:
        return self.pairs[self.tree_edges]

    def cotree_pairs(self) -> np.ndarray:
        return self.pairs[self.cotree_edges]


def spanning_tree(g: DirectedGraph | SymmetrizedView, root: int = 0) -> SpanningTree:
    """Deterministic BFS spanning tree (neighbors visited in index order).

    Raises
    ------
    NotConnectedError
        If the undirected support of the graph is disconnected.
    """
    sym = g if isinstance(g, SymmetrizedView) else symmetrize(g)
    adj = sym.neighbors()
    n = sym.n
    parent = np.full(n, -1, dtype=np.int64)
    depth = np.full(n, -1, dtype=np.int64)
    in_tree = np.zeros(sym.n_edges, dtype=bool)
    depth[root] = 0
    order = [root]
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for v, e in adj[u]:
            if depth[v] < 0:
                depth[v] = depth[u] + 1
                parent[v] = u
                in_tree[e] = True
                order.append(v)
                queue.append(v)
    if len(order) != n:
        raise NotConnectedError(
            f"graph is not connected: BFS from node {root} reached {len(order)} of {n} nodes"
        )
    return SpanningTree(
        n=n,
        root=root,
        pairs=sym.pairs,
        tree_edges=np.flatnonzero(in_tree),
        cotree_edges=np.flatnonzero(~in_tree),
        parent=parent,
        depth=depth,
        order=np.asarray(order, dtype=np.int64),
    )


def tree_path(t: SpanningTree, src: int, dst: int) -> list[tuple[int, int]]:
    """Edges of the unique tree path from ``src`` to ``dst``, oriented along the walk."""
    up, down = [], []
    a, b = src, dst
    while t.depth[a] > t.depth[b]:
        up.append((a, int(t.parent[a])))
        a = int(t.parent[a])
    while t.depth[b] > t.depth[a]:
        down.append((int(t.parent[b]), b))
        b = int(t.parent[b])
    while a != b:
        up.append((a, int(t.parent[a])))
        a = int(t.parent[a])
        down.append((int(t.parent[b]), b))
        b = int(t.parent[b])
    return up + down[::-1]
