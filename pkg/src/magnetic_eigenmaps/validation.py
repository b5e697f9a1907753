"""Input checks shared by the estimators and the command line."""

from __future__ import annotations

import logging
import warnings

import numpy as np
import scipy.sparse as sp

from .exceptions import GraphError, IndexOutOfRangeError
from .graph import DirectedGraph, connected_components

logger = logging.getLogger(__name__)

__all__ = ["check_graph", "check_axes", "prepare_graph"]


def check_graph(X) -> DirectedGraph:
    """Accept a :class:`DirectedGraph` or a square adjacency (dense or sparse)."""
    if isinstance(X, DirectedGraph):
        return X
    if sp.issparse(X):
        return DirectedGraph.from_adjacency(X)
    try:
        arr = np.asarray(X)
    except Exception as exc:  # pragma: no cover - exotic inputs
        raise TypeError(f"cannot interpret {type(X).__name__} as a graph") from exc
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise GraphError(f"expected a square adjacency matrix, got shape {arr.shape}")
    if not np.issubdtype(arr.dtype, np.number) and arr.dtype != bool:
        raise TypeError(f"adjacency must be numeric, got dtype {arr.dtype}")
    if not np.all(np.isfinite(arr)):
        raise GraphError("adjacency contains NaN or infinite entries")
    return DirectedGraph.from_adjacency(arr)


def check_axes(axes, k: int) -> tuple[int, ...]:
    axes = tuple(int(a) for a in axes)
    if not axes:
        raise IndexOutOfRangeError("at least one eigen index is needed")
    bad = [a for a in axes if not 0 <= a < k]
    if bad:
        raise IndexOutOfRangeError(f"eigen indices {bad} outside [0, {k})")
    return axes


def prepare_graph(graph: DirectedGraph, drop_isolated: bool = False) -> tuple[DirectedGraph, np.ndarray]:
    """Make a graph usable by the spectral pipeline.

    Isolated nodes are an error unless ``drop_isolated``.  A disconnected
    support is reduced to its largest component with a warning.  Returns the
    reduced graph and the original indices of the kept nodes.
    """
    kept = np.arange(graph.n)
    isolated = graph.isolated_nodes()
    if len(isolated) and graph.n > 1:
        if not drop_isolated:
            raise GraphError(
                f"{len(isolated)} isolated node(s) (zero degree), e.g. "
                f"{[graph.ids[i] for i in isolated[:5]]}; drop them explicitly"
            )
        keep = np.setdiff1d(kept, isolated)
        logger.info("dropping %d isolated nodes", len(isolated))
        graph, kept = graph.subgraph(keep), keep
    comps = connected_components(graph)
    if len(comps) > 1:
        largest = comps[0]
        warnings.warn(
            f"graph has {len(comps)} connected components; keeping the largest "
            f"({len(largest)} of {graph.n} nodes)",
            RuntimeWarning,
            stacklevel=2,
        )
        graph, kept = graph.subgraph(largest), kept[largest]
    return graph, kept
