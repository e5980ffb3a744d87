"""Shared fixtures and independent helpers for the test suite.

The enumeration helpers here are deliberately written without reusing library
internals (own connectivity check, own subset walk) so they can serve as
independent references for the miner and the distribution code.
"""

from __future__ import annotations

import itertools
import random
from pathlib import Path

import pytest

from ugmine import Dataset, Subgraph, UncertainGraph, fig2_dataset

DATA_DIR = Path(__file__).parent / "data"


@pytest.fixture
def fig2() -> Dataset:
    return fig2_dataset()


def all_pairs(num_nodes: int) -> list[tuple[int, int]]:
    return [(u, v) for u in range(num_nodes) for v in range(u + 1, num_nodes)]


def make_random_dataset(
    rng: random.Random,
    n_graphs: int | None = None,
    num_nodes: int = 4,
    max_edges: int = 3,
    prob_lo: float = 0.05,
    prob_hi: float = 1.0,
) -> Dataset:
    """Tiny random dataset with at least one graph per class."""
    if n_graphs is None:
        n_graphs = rng.randint(2, 6)
    pairs = all_pairs(num_nodes)
    graphs = []
    labels = []
    for i in range(n_graphs):
        k = rng.randint(0, max_edges)
        edges = {e: rng.uniform(prob_lo, prob_hi) for e in rng.sample(pairs, k)}
        graphs.append(UncertainGraph(num_nodes, edges))
        labels.append(1 if i == 0 else -1 if i == 1 else rng.choice([1, -1]))
    return Dataset(num_nodes, tuple(graphs), tuple(labels))


def _subset_connected(edges: tuple[tuple[int, int], ...]) -> bool:
    """Union-find connectivity over the edge-induced node set."""
    parent: dict[int, int] = {}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        parent.setdefault(u, u)
        parent.setdefault(v, v)
        parent[find(u)] = find(v)
    roots = {find(n) for n in parent}
    return len(roots) == 1


def connected_edge_subsets(edges: list[tuple[int, int]]) -> set[frozenset]:
    """Every nonempty connected edge subset, by direct powerset filtering."""
    out = set()
    for r in range(1, len(edges) + 1):
        for combo in itertools.combinations(edges, r):
            if _subset_connected(combo):
                out.add(frozenset(combo))
    return out


def random_connected_subgraph(
    rng: random.Random, universe_edges: list[tuple[int, int]], max_size: int = 3
) -> Subgraph:
    """Grow a random connected subgraph from a random seed edge."""
    sub = {rng.choice(universe_edges)}
    target = rng.randint(1, max_size)
    while len(sub) < target:
        nodes = {n for e in sub for n in e}
        frontier = sorted(
            e for e in universe_edges if e not in sub and (e[0] in nodes or e[1] in nodes)
        )
        if not frontier:
            break
        sub.add(rng.choice(frontier))
    return Subgraph(tuple(sorted(sub)))


def extend_subgraph(
    rng: random.Random, sub: Subgraph, universe_edges: list[tuple[int, int]], extra: int
) -> Subgraph | None:
    """Random connected supergraph of ``sub`` with up to ``extra`` more edges."""
    edges = set(sub.edges)
    for _ in range(extra):
        nodes = {n for e in edges for n in e}
        frontier = sorted(
            e for e in universe_edges if e not in edges and (e[0] in nodes or e[1] in nodes)
        )
        if not frontier:
            break
        edges.add(rng.choice(frontier))
    if len(edges) == len(sub.edges):
        return None
    return Subgraph(tuple(sorted(edges)))
