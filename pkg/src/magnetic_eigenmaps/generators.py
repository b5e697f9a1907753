"""Seeded synthetic directed networks.

``gen_flow_groups`` and ``gen_cluster_hubs`` build the two artificial
benchmarks (groups with a cyclic running flow; two dense cores with a sink
pair and a source pair).  ``gen_fixture`` provides the small families used by
the property suites.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .exceptions import ConnectivityRetryExceededError, ParamOutOfRangeError
from .graph import DirectedGraph, is_connected

__all__ = [
    "GeneratorSpec",
    "gen_flow_groups",
    "gen_cluster_hubs",
    "gen_fixture",
    "generate",
    "FIXTURE_KINDS",
]

FIXTURE_KINDS = ("erdos_renyi_digraph", "tree", "cycle", "path")


def _check_prob(**probs):
    for name, p in probs.items():
        if not 0.0 <= p <= 1.0:
            raise ParamOutOfRangeError(f"{name}={p} is not a probability")


def _check_size(**sizes):
    for name, s in sizes.items():
        if int(s) != s or s < 1:
            raise ParamOutOfRangeError(f"{name}={s} must be a positive integer")


def _flow_direction(a: int, b: int, groups: int) -> bool:
    """True if the flow between groups ``a`` and ``b`` runs ``a -> b``."""
    step = (b - a) % groups
    if 2 * step == groups:
        return a < b
    return 2 * step < groups


def gen_flow_groups(
    groups: int = 3,
    size: int = 10,
    p_intra: float = 0.5,
    p_inter: float = 0.5,
    directed_fraction: float = 0.9,
    seed=None,
) -> tuple[DirectedGraph, np.ndarray]:
    """Groups linked by a cyclic flow ``0 -> 1 -> ... -> groups-1 -> 0``.

    Intra-group pairs are linked in both directions with probability
    ``p_intra``.  Inter-group pairs are linked with probability ``p_inter``;
    a linked pair points along the flow with probability ``directed_fraction``
    and against it otherwise.  Returns the graph and the group labels.
    """
    _check_prob(p_intra=p_intra, p_inter=p_inter, directed_fraction=directed_fraction)
    _check_size(groups=groups, size=size)
    rng = np.random.default_rng(seed)
    n = groups * size
    labels = np.repeat(np.arange(groups), size)
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            a, b = labels[i], labels[j]
            if a == b:
                if rng.random() < p_intra:
                    edges += [(i, j), (j, i)]
            elif rng.random() < p_inter:
                along = rng.random() < directed_fraction
                forward = _flow_direction(a, b, groups)
                edges.append((i, j) if forward == along else (j, i))
    return DirectedGraph.from_edges(edges, n=n), labels


def gen_cluster_hubs(
    group_size: int = 14,
    p_intra: float = 0.5,
    n_interlinks: int = 4,
    hub_pairs: int = 2,
    seed=None,
) -> tuple[DirectedGraph, np.ndarray]:
    """Two dense undirected cores, a few bridges, a sink group and a source group.

    Nodes ``0 .. 2*group_size-1`` form the cores (labels 0 and 1), followed by
    ``hub_pairs`` sinks (label 2, linked from every core node) and
    ``hub_pairs`` sources (label 3, linking to every core node).  The
    ``n_interlinks`` bridges are distinct random core pairs, linked both ways.
    """
    _check_prob(p_intra=p_intra)
    _check_size(group_size=group_size, hub_pairs=hub_pairs)
    if n_interlinks < 0 or n_interlinks > group_size**2:
        raise ParamOutOfRangeError(f"n_interlinks={n_interlinks} outside [0, {group_size**2}]")
    rng = np.random.default_rng(seed)
    core = 2 * group_size
    n = core + 2 * hub_pairs
    labels = np.concatenate(
        [np.repeat([0, 1], group_size), np.full(hub_pairs, 2), np.full(hub_pairs, 3)]
    )
    edges = []
    for c in range(2):
        members = range(c * group_size, (c + 1) * group_size)
        for i in members:
            for j in members:
                if i < j and rng.random() < p_intra:
                    edges += [(i, j), (j, i)]
    bridges = rng.choice(group_size * group_size, size=n_interlinks, replace=False)
    for b in bridges.tolist():
        i, j = b // group_size, group_size + b % group_size
        edges += [(i, j), (j, i)]
    sinks = range(core, core + hub_pairs)
    sources = range(core + hub_pairs, n)
    for c in range(core):
        edges += [(c, s) for s in sinks]
        edges += [(s, c) for s in sources]
    return DirectedGraph.from_edges(edges, n=n), labels


def _random_tree(n, rng):
    order = rng.permutation(n)
    edges = []
    for pos in range(1, n):
        u, v = order[pos], order[rng.integers(pos)]
        kind = rng.integers(3)
        if kind == 0:
            edges.append((u, v))
        elif kind == 1:
            edges.append((v, u))
        else:
            edges += [(u, v), (v, u)]
    return edges


def gen_fixture(kind: str, params: dict | None = None, seed=None) -> DirectedGraph:
    """Test families.

    ``cycle(n)``: directed cycle ``0 -> 1 -> ... -> 0``.  ``path(n)``: directed
    path.  ``tree(n)``: uniformly attached random tree whose links are directed
    either way or reciprocal with equal odds.  ``erdos_renyi_digraph(n, p)``:
    every ordered pair linked independently with probability ``p``, redrawn up
    to ``max_retries`` (100) times until connected.
    """
    params = dict(params or {})
    rng = np.random.default_rng(seed)
    n = int(params.get("n", 3))
    _check_size(n=n)
    if kind == "cycle":
        if n < 3:
            raise ParamOutOfRangeError("a directed cycle needs n >= 3")
        return DirectedGraph.from_edges([(i, (i + 1) % n) for i in range(n)], n=n)
    if kind == "path":
        return DirectedGraph.from_edges([(i, i + 1) for i in range(n - 1)], n=n)
    if kind == "tree":
        return DirectedGraph.from_edges(_random_tree(n, rng), n=n)
    if kind == "erdos_renyi_digraph":
        p = float(params.get("p", 0.15))
        _check_prob(p=p)
        retries = int(params.get("max_retries", 100))
        for _ in range(retries + 1):
            mask = rng.random((n, n)) < p
            np.fill_diagonal(mask, False)
            g = DirectedGraph.from_edges(np.argwhere(mask).tolist(), n=n)
            if is_connected(g):
                return g
        raise ConnectivityRetryExceededError(f"no connected G({n}, {p}) digraph in {retries} retries")
    raise ParamOutOfRangeError(f"unknown fixture kind {kind!r}")


@dataclass
class GeneratorSpec:
    """A generator invocation: ``kind`` plus keyword ``params`` and a ``seed``."""

    kind: str
    params: dict = field(default_factory=dict)
    seed: int | None = 0

    def build(self) -> tuple[DirectedGraph, np.ndarray | None]:
        return generate(self.kind, self.params, self.seed)


def generate(kind: str, params: dict | None = None, seed=None):
    """Dispatch by kind; returns ``(graph, labels)`` with ``labels=None`` for fixtures."""
    params = dict(params or {})
    if kind == "flow_groups":
        return gen_flow_groups(seed=seed, **params)
    if kind == "cluster_hubs":
        return gen_cluster_hubs(seed=seed, **params)
    if kind in FIXTURE_KINDS:
        return gen_fixture(kind, params, seed), None
    raise ParamOutOfRangeError(f"unknown generator kind {kind!r}")
