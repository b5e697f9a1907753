"""Edge-list and GML readers, edge-list writer, CSV helpers.

Edge lists hold one ``src dst`` pair per line (integers or arbitrary tokens);
``#`` starts a comment.  Node ids are indexed in first-seen order.

The GML reader understands the subset used by the usual network datasets:
a ``graph [ ... ]`` block holding ``node [ id ... ]`` and
``edge [ source ... target ... ]`` records.  Every edge is read as a link
``source -> target``.
"""

from __future__ import annotations

import csv
import logging
import re
from pathlib import Path

import numpy as np

from .exceptions import MissingFieldError, ParseError, SelfLoopError
from .graph import DirectedGraph

logger = logging.getLogger(__name__)

__all__ = [
    "read_edge_list",
    "write_edge_list",
    "read_gml",
    "parse_gml",
    "arc_set",
    "write_csv",
    "fmt",
]


def fmt(x) -> str:
    """12 significant digits, '.' decimal separator."""
    return format(float(x), ".12g")


def read_edge_list(path) -> DirectedGraph:
    """Read a directed edge list; duplicate links collapse.

    Raises
    ------
    ParseError
        A non-comment line does not hold exactly two tokens.
    SelfLoopError
        A line links a node to itself.
    """
    index: dict[str, int] = {}
    arcs = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            tokens = line.split()
            if len(tokens) != 2:
                raise ParseError(f"expected 'src dst', got {raw.strip()!r}", line=lineno)
            src, dst = tokens
            if src == dst:
                raise SelfLoopError(f"self-loop on node {src!r} at line {lineno}", line=lineno)
            for tok in tokens:
                if tok not in index:
                    index[tok] = len(index)
            arcs.append((index[src], index[dst]))
    if not index:
        raise ParseError(f"{path}: no edges found")
    return DirectedGraph.from_edges(arcs, n=len(index), ids=list(index))


def write_edge_list(graph: DirectedGraph, path) -> None:
    """Write one ``src dst`` line per link using the node ids."""
    with open(path, "w", encoding="utf-8") as fh:
        for i, j in graph.arcs().tolist():
            fh.write(f"{graph.ids[i]} {graph.ids[j]}\n")


def arc_set(graph: DirectedGraph) -> set[tuple[str, str]]:
    """Links as ``(src_id, dst_id)`` pairs, independent of internal indexing."""
    return {(graph.ids[i], graph.ids[j]) for i, j in graph.arcs().tolist()}


_TOKEN = re.compile(
    rb"""
    (?P<ws>\s+)
  | (?P<comment>\#[^\n]*)
  | (?P<open>\[)
  | (?P<close>\])
  | (?P<string>"[^"]*")
  | (?P<number>[+-]?(?:\d+\.\d*|\.\d+|\d+)(?:[eE][+-]?\d+)?)
  | (?P<key>[A-Za-z_][A-Za-z0-9_]*)
    """,
    re.VERBOSE,
)


def _tokens(data: bytes):
    pos = 0
    while pos < len(data):
        m = _TOKEN.match(data, pos)
        if m is None:
            raise ParseError(f"unexpected character {data[pos:pos + 1]!r}", offset=pos)
        kind = m.lastgroup
        if kind not in ("ws", "comment"):
            yield kind, m.group(), pos
        pos = m.end()


def _value(kind, text):
    if kind == "string":
        return text[1:-1].decode("utf-8", errors="replace")
    if kind == "number":
        s = text.decode()
        return int(s) if re.fullmatch(r"[+-]?\d+", s) else float(s)
    return text.decode()


def parse_gml(data: bytes) -> list:
    """Parse GML bytes into nested ``[(key, value), ...]`` lists.

    Values are ints, floats, strings or nested lists.  Errors carry the byte
    offset of the offending token.
    """
    stack: list[list] = [[]]
    opened: list[int] = []
    key = None
    key_pos = 0
    for kind, text, pos in _tokens(data):
        if key is None:
            if kind == "close":
                if not opened:
                    raise ParseError("unbalanced ']'", offset=pos)
                opened.pop()
                done = stack.pop()
                stack[-1][-1] = (stack[-1][-1][0], done)
                continue
            if kind != "key":
                raise ParseError(f"expected a key, got {text.decode(errors='replace')!r}", offset=pos)
            key, key_pos = text.decode(), pos
            continue
        if kind == "open":
            stack[-1].append((key, None))
            stack.append([])
            opened.append(pos)
        elif kind in ("string", "number", "key"):
            stack[-1].append((key, _value(kind, text)))
        else:
            raise ParseError(f"missing value for key {key!r}", offset=pos)
        key = None
    if key is not None:
        raise ParseError(f"missing value for key {key!r}", offset=key_pos)
    if opened:
        raise ParseError("unclosed '['", offset=opened[-1])
    return stack[0]


def read_gml(path, drop_isolated: bool = False, label_field: str = "value"):
    """Read a GML network as a directed graph.

    Returns ``(graph, labels)`` where ``labels`` holds the ``label_field``
    attribute of every node (``None`` when no node carries it).  Self-loops and
    duplicate links are dropped.  With ``drop_isolated`` nodes without any link
    are removed, as is customary for the blog network.
    """
    data = Path(path).read_bytes()
    top = parse_gml(data)
    graphs = [v for k, v in top if k == "graph"]
    if not graphs or not isinstance(graphs[0], list):
        raise MissingFieldError(f"{path}: no 'graph [ ... ]' block")
    body = graphs[0]
    ids, values, index = [], [], {}
    arcs, loops = [], 0
    for key, rec in body:
        if key == "node":
            fields = dict(item for item in rec if not isinstance(item[1], list))
            if "id" not in fields:
                raise MissingFieldError(f"node record #{len(ids)} without 'id'")
            nid = str(fields["id"])
            if nid in index:
                raise ParseError(f"duplicate node id {nid!r}")
            index[nid] = len(ids)
            ids.append(nid)
            values.append(fields.get(label_field))
    for key, rec in body:
        if key == "edge":
            fields = dict(item for item in rec if not isinstance(item[1], list))
            for name in ("source", "target"):
                if name not in fields:
                    raise MissingFieldError(f"edge record without '{name}'")
            s, t = str(fields["source"]), str(fields["target"])
            for end in (s, t):
                if end not in index:
                    raise ParseError(f"edge refers to unknown node {end!r}")
            if s == t:
                loops += 1
                continue
            arcs.append((index[s], index[t]))
    if not ids:
        raise MissingFieldError(f"{path}: graph has no nodes")
    if loops:
        logger.info("%s: ignored %d self-loop(s)", path, loops)
    graph = DirectedGraph.from_edges(arcs, n=len(ids), ids=ids)
    labels = None if all(v is None for v in values) else np.array(values, dtype=object)
    if drop_isolated:
        keep = np.setdiff1d(np.arange(graph.n), graph.isolated_nodes())
        if len(keep) < graph.n:
            logger.info("%s: dropped %d isolated node(s)", path, graph.n - len(keep))
            graph = graph.subgraph(keep)
            labels = None if labels is None else labels[keep]
    return graph, labels


def write_csv(path, header, rows) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([fmt(x) if isinstance(x, (float, np.floating)) else x for x in row])
