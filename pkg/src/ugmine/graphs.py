"""Uncertain and certain graphs over a shared, integer-labeled node universe.

All graphs in a dataset share one node set {0, ..., num_nodes-1}; node labels
are the indices themselves. Because labels are unique, a subgraph has at most
one embedding in any graph, so containment reduces to edge-set inclusion.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Iterable, Mapping

Edge = tuple[int, int]


class DatasetFormatError(ValueError):
    """Raised when dataset JSON is malformed or violates an invariant."""


def make_edge(u: int, v: int) -> Edge:
    """Canonical undirected edge: endpoints ordered so that u < v."""
    if u == v:
        raise ValueError(f"self-loop edge ({u}, {v})")
    return (u, v) if u < v else (v, u)


def _check_edge(e: Edge, num_nodes: int, where: str) -> None:
    u, v = e
    if not (0 <= u < v < num_nodes):
        raise ValueError(f"{where}: edge ({u}, {v}) not canonical for {num_nodes} nodes")


@dataclass(frozen=True)
class UncertainGraph:
    """Graph whose edges exist independently with probability in (0, 1].

    ``edges`` maps canonical edges to existence probabilities. The mapping is
    copied at construction and must not be mutated afterwards.
    """

    num_nodes: int
    edges: Mapping[Edge, float]

    def __post_init__(self) -> None:
        object.__setattr__(self, "edges", dict(self.edges))
        if self.num_nodes < 0:
            raise ValueError("num_nodes must be nonnegative")
        for e, p in self.edges.items():
            _check_edge(e, self.num_nodes, "uncertain graph")
            if not (0.0 < p <= 1.0) or math.isnan(p):
                raise ValueError(f"edge {e}: probability {p!r} out of range (0, 1]")


@dataclass(frozen=True)
class CertainGraph:
    """Deterministic undirected graph; one possible world of an uncertain graph."""

    num_nodes: int
    edges: frozenset[Edge]

    def __post_init__(self) -> None:
        object.__setattr__(self, "edges", frozenset(self.edges))
        for e in self.edges:
            _check_edge(e, self.num_nodes, "certain graph")


def _connected(edges: Iterable[Edge]) -> bool:
    """True when the edge-induced node set forms one connected component."""
    adj: dict[int, list[int]] = {}
    for u, v in edges:
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    if not adj:
        return False
    start = next(iter(adj))
    seen = {start}
    frontier = [start]
    while frontier:
        node = frontier.pop()
        for nb in adj[node]:
            if nb not in seen:
                seen.add(nb)
                frontier.append(nb)
    return len(seen) == len(adj)


@dataclass(frozen=True)
class Subgraph:
    """Connected subgraph feature in canonical form.

    Canonical form: edges sorted ascending by (u, v) with u < v, no
    duplicates, nonempty, and the edge-induced node set connected.
    """

    edges: tuple[Edge, ...]

    def __post_init__(self) -> None:
        if not self.edges:
            raise ValueError("subgraph must contain at least one edge")
        if list(self.edges) != sorted(set(self.edges)):
            raise ValueError("subgraph edges must be sorted and duplicate-free")
        for u, v in self.edges:
            if not (0 <= u < v):
                raise ValueError(f"subgraph edge ({u}, {v}) not canonical")
        if not _connected(self.edges):
            raise ValueError("subgraph edge set is not connected")

    @classmethod
    def from_edges(cls, pairs: Iterable[tuple[int, int]]) -> "Subgraph":
        """Build a subgraph from unordered endpoint pairs, canonicalizing them."""
        canon = sorted({make_edge(u, v) for u, v in pairs})
        return cls(tuple(canon))

    @property
    def nodes(self) -> frozenset[int]:
        return frozenset(n for e in self.edges for n in e)

    def __len__(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class Dataset:
    """Ordered collection of uncertain graphs with +1/-1 class labels."""

    num_nodes: int
    graphs: tuple[UncertainGraph, ...]
    labels: tuple[int, ...]
    ids: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "graphs", tuple(self.graphs))
        object.__setattr__(self, "labels", tuple(self.labels))
        if not self.ids:
            object.__setattr__(self, "ids", tuple(f"g{i}" for i in range(len(self.graphs))))
        else:
            object.__setattr__(self, "ids", tuple(self.ids))
        if len(self.labels) != len(self.graphs):
            raise ValueError("labels and graphs must have equal length")
        if len(self.ids) != len(self.graphs):
            raise ValueError("ids and graphs must have equal length")
        for i, y in enumerate(self.labels):
            if y not in (1, -1):
                raise ValueError(f"graph {i}: label must be +1 or -1, got {y!r}")
        for i, g in enumerate(self.graphs):
            if g.num_nodes != self.num_nodes:
                raise ValueError(
                    f"graph {i}: num_nodes {g.num_nodes} != dataset num_nodes {self.num_nodes}"
                )

    def __len__(self) -> int:
        return len(self.graphs)

    @property
    def pos_indices(self) -> tuple[int, ...]:
        return tuple(i for i, y in enumerate(self.labels) if y == 1)

    @property
    def neg_indices(self) -> tuple[int, ...]:
        return tuple(i for i, y in enumerate(self.labels) if y == -1)

    @property
    def pos(self) -> tuple[UncertainGraph, ...]:
        return tuple(self.graphs[i] for i in self.pos_indices)

    @property
    def neg(self) -> tuple[UncertainGraph, ...]:
        return tuple(self.graphs[i] for i in self.neg_indices)

    @property
    def n_pos(self) -> int:
        return len(self.pos_indices)

    @property
    def n_neg(self) -> int:
        return len(self.neg_indices)


def _require_nodes(g: Subgraph, num_nodes: int) -> None:
    top = max(v for _, v in g.edges)
    if top >= num_nodes:
        raise ValueError(f"subgraph node {top} outside universe of {num_nodes} nodes")


def contains(g: Subgraph, graph: CertainGraph) -> bool:
    """True iff every edge of ``g`` is present in ``graph``."""
    _require_nodes(g, graph.num_nodes)
    return all(e in graph.edges for e in g.edges)


def containment_probability(g: Subgraph, graph: UncertainGraph) -> float:
    """Probability that a world of ``graph`` contains ``g``.

    Equals the product of the edge probabilities of ``g`` when every edge is
    present in ``graph``, and exactly 0 otherwise.
    """
    _require_nodes(g, graph.num_nodes)
    prod = 1.0
    for e in g.edges:
        p = graph.edges.get(e)
        if p is None:
            return 0.0
        prod *= p
    return prod


def union_graph(dataset: Dataset) -> CertainGraph:
    """Certain graph holding every edge that appears in any graph of the dataset.

    This is the search universe for subgraph enumeration: an edge can occur in
    a feature only if some graph assigns it nonzero probability.
    """
    edges: set[Edge] = set()
    for g in dataset.graphs:
        edges.update(g.edges)
    return CertainGraph(dataset.num_nodes, frozenset(edges))


def parse_dataset(text: bytes | str) -> Dataset:
    """Parse the JSON dataset format; raises DatasetFormatError with context."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DatasetFormatError(f"malformed JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise DatasetFormatError("top level must be a JSON object")
    num_nodes = obj.get("num_nodes")
    if not isinstance(num_nodes, int) or num_nodes < 0:
        raise DatasetFormatError("num_nodes must be a nonnegative integer")
    raw_graphs = obj.get("graphs")
    if not isinstance(raw_graphs, list):
        raise DatasetFormatError("graphs must be a list")

    graphs: list[UncertainGraph] = []
    labels: list[int] = []
    ids: list[str] = []
    for i, item in enumerate(raw_graphs):
        if not isinstance(item, dict):
            raise DatasetFormatError(f"graph {i}: entry must be an object")
        label = item.get("label")
        if label not in (1, -1):
            raise DatasetFormatError(f"graph {i}: label must be 1 or -1, got {label!r}")
        gid = item.get("id", f"g{i}")
        if not isinstance(gid, str):
            raise DatasetFormatError(f"graph {i}: id must be a string")
        raw_edges = item.get("edges")
        if not isinstance(raw_edges, list):
            raise DatasetFormatError(f"graph {i}: edges must be a list")
        edges: dict[Edge, float] = {}
        for j, entry in enumerate(raw_edges):
            if not (isinstance(entry, list) and len(entry) == 3):
                raise DatasetFormatError(f"graph {i}, edge {j}: expected [u, v, p]")
            u, v, p = entry
            if not (isinstance(u, int) and isinstance(v, int)):
                raise DatasetFormatError(f"graph {i}, edge {j}: endpoints must be integers")
            if u == v:
                raise DatasetFormatError(f"graph {i}, edge {j}: self-loop ({u}, {v})")
            if not isinstance(p, (int, float)) or isinstance(p, bool):
                raise DatasetFormatError(f"graph {i}, edge {j}: probability must be a number")
            p = float(p)
            if not (0.0 < p <= 1.0) or math.isnan(p):
                raise DatasetFormatError(
                    f"graph {i}, edge {j}: probability {p} out of range (0, 1]"
                )
            e = (u, v) if u < v else (v, u)
            if not (0 <= e[0] and e[1] < num_nodes):
                raise DatasetFormatError(
                    f"graph {i}, edge {j}: endpoints ({u}, {v}) outside [0, {num_nodes})"
                )
            if e in edges:
                raise DatasetFormatError(f"graph {i}, edge {j}: duplicate edge ({e[0]}, {e[1]})")
            edges[e] = p
        graphs.append(UncertainGraph(num_nodes, edges))
        labels.append(label)
        ids.append(gid)
    return Dataset(num_nodes, tuple(graphs), tuple(labels), tuple(ids))


def serialize_dataset(dataset: Dataset) -> bytes:
    """Serialize to the JSON dataset format; inverse of parse_dataset.

    Probabilities are written with repr-level precision so parsing the output
    reproduces the dataset exactly, bit for bit.
    """
    lines = ["{", f' "num_nodes": {dataset.num_nodes},', ' "graphs": [']
    for i, g in enumerate(dataset.graphs):
        obj = {
            "id": dataset.ids[i],
            "label": dataset.labels[i],
            "edges": [[u, v, p] for (u, v), p in sorted(g.edges.items())],
        }
        comma = "," if i + 1 < len(dataset.graphs) else ""
        lines.append("  " + json.dumps(obj) + comma)
    lines.append(" ]")
    lines.append("}")
    return ("\n".join(lines) + "\n").encode("utf-8")
