"""Top-t discriminative subgraph search with branch-and-bound pruning.

Because node labels are unique, subgraph isomorphism degenerates to edge-set
inclusion and the classic DFS-code machinery is unnecessary. Enumeration is
instead organized as a reverse-search tree over connected edge sets: every
subgraph has a unique canonical parent (drop the largest edge whose removal
keeps it connected), so each connected subgraph of the union graph is
generated exactly once.

At every tree node the exact support distributions are computed, the measure
value is offered to a bounded best-t candidate list, and the subtree is cut
when either the expected frequency falls to min_sup or below (sound by
anti-monotonicity) or, for the expectation and phi-probability measures, the
dominating upper bound cannot beat the current t-th best value.

The candidate list keeps the t best features under the total order
(measure desc, fewer edges, lexicographically smaller edge list), which makes
the mined set a pure function of the set of evaluated subgraphs, independent
of traversal or insertion order.
"""

from __future__ import annotations

import math
from bisect import insort
from dataclasses import dataclass, field, replace

import numpy as np

from .distribution import (
    EXPECTATION,
    MEDIAN,
    PHI_PROBABILITY,
    MeasureSpec,
    median_from_masses,
    mode_from_masses,
    score_group_key,
)
from .graphs import CertainGraph, Dataset, Subgraph, union_graph
from .graphs import _connected as _edges_connected
from .scores import ScoreFunction, envelope_table, score_grid


@dataclass(frozen=True)
class MiningConfig:
    """Parameters of one mining run."""

    t: int
    min_sup: float
    measure: MeasureSpec
    score: ScoreFunction
    max_edges: int | None = None
    frequency_pruning: bool = True
    bound_pruning: bool = True
    keep_joints: bool = False

    def __post_init__(self) -> None:
        if self.t < 1:
            raise ValueError("t must be >= 1")
        if not (0.0 <= self.min_sup <= 1.0):
            raise ValueError("min_sup must lie in [0, 1]")
        if self.max_edges is not None and self.max_edges < 1:
            raise ValueError("max_edges must be >= 1 when given")


@dataclass(frozen=True)
class MinedFeature:
    """One mined subgraph with its measure value and support summary."""

    subgraph: Subgraph
    measure_value: float
    exp_freq: float
    joint: np.ndarray | None = field(default=None, compare=False)


@dataclass
class SearchStats:
    """Instrumentation of one traversal."""

    nodes_evaluated: int = 0
    frequency_pruned: int = 0
    bound_pruned: int = 0
    theta_trace: list[float] = field(default_factory=list)


@dataclass(frozen=True)
class MiningResult:
    features: tuple[MinedFeature, ...]
    stats: SearchStats


def canonical_parent(sub: Subgraph) -> Subgraph | None:
    """Parent of ``sub`` in the reverse-search tree; None for single edges.

    The parent drops the lexicographically largest edge whose removal leaves
    the edge-induced node set connected. Such an edge always exists: a
    degree-1 node's edge is removable, and a graph without degree-1 nodes
    contains a cycle.
    """
    edges = sub.edges
    if len(edges) == 1:
        return None
    for i in range(len(edges) - 1, -1, -1):
        rest = edges[:i] + edges[i + 1 :]
        if _edges_connected(rest):
            return Subgraph(rest)
    raise AssertionError(f"no removable edge in connected subgraph {edges}")


def children(parent: Subgraph | None, universe: CertainGraph) -> list[Subgraph]:
    """Children of ``parent`` in the reverse-search tree over ``universe``.

    The root (None) owns every single-edge subgraph. Otherwise a child is the
    parent plus one incident universe edge whose canonical parent is exactly
    this parent; across the whole tree every connected subgraph of the
    universe appears exactly once.
    """
    if parent is None:
        return [Subgraph((e,)) for e in sorted(universe.edges)]
    nodes = parent.nodes
    own = set(parent.edges)
    out = []
    for e in sorted(universe.edges):
        if e in own or (e[0] not in nodes and e[1] not in nodes):
            continue
        cand = Subgraph(tuple(sorted(parent.edges + (e,))))
        if canonical_parent(cand) == parent:
            out.append(cand)
    return out


def _batched_support(probs: np.ndarray) -> np.ndarray:
    """Support DP applied to a batch of features at once.

    ``probs`` holds one row of per-graph containment probabilities per
    feature; row i of the result is the Poisson-binomial law of feature i's
    support count. Same recurrence as distribution.poisson_binomial, with the
    graph loop kept scalar and the feature axis vectorized.
    """
    k, m = probs.shape
    dist = np.zeros((k, m + 1))
    dist[:, 0] = 1.0
    for j in range(m):
        p = probs[:, j : j + 1]
        dist[:, 1 : j + 2] = dist[:, 1 : j + 2] * (1.0 - p) + dist[:, 0 : j + 1] * p
        dist[:, 0] *= 1.0 - p[:, 0]
    return dist


class _MeasureGrids:
    """Per-run measure tables over the (n_pos+1) x (n_neg+1) support grid."""

    def __init__(
        self,
        score: ScoreFunction,
        measure: MeasureSpec,
        n_pos: int,
        n_neg: int,
        with_bounds: bool,
    ) -> None:
        self.kind = measure.kind
        grid = score_grid(score, n_pos, n_neg)
        if self.kind == EXPECTATION:
            inf_mask = np.isinf(grid)
            self.finite = np.where(inf_mask, 0.0, grid)
            self.inf_mask = inf_mask.astype(float)
            self.has_inf = bool(inf_mask.any())
        elif self.kind == PHI_PROBABILITY:
            assert measure.phi is not None
            self.indicator = (grid >= measure.phi).astype(float)
        else:
            keys = np.array([score_group_key(float(s)) for s in grid.ravel()])
            self.group_scores, inverse = np.unique(keys, return_inverse=True)
            self.group_ids = inverse.ravel()
        if with_bounds:
            env = envelope_table(score, n_pos, n_neg)
            if self.kind == EXPECTATION:
                env_inf = np.isinf(env)
                self.env_finite = np.where(env_inf, 0.0, env)
                self.env_inf_mask = env_inf.astype(float)
                self.env_has_inf = bool(env_inf.any())
            elif self.kind == PHI_PROBABILITY:
                assert measure.phi is not None
                self.env_indicator = (env >= measure.phi).astype(float)

    @staticmethod
    def _bilinear(pos: np.ndarray, grid: np.ndarray, neg: np.ndarray) -> np.ndarray:
        return np.einsum("ka,ab,kb->k", pos, grid, neg, optimize=True)

    def _expectation(self, pos, neg, finite, inf_mask, has_inf):
        values = self._bilinear(pos, finite, neg)
        if has_inf:
            hits = self._bilinear((pos > 0).astype(float), inf_mask, (neg > 0).astype(float))
            values = np.where(hits > 0, math.inf, values)
        return values

    def values(self, pos: np.ndarray, neg: np.ndarray) -> np.ndarray:
        if self.kind == EXPECTATION:
            return self._expectation(pos, neg, self.finite, self.inf_mask, self.has_inf)
        if self.kind == PHI_PROBABILITY:
            return self._bilinear(pos, self.indicator, neg)
        out = np.empty(pos.shape[0])
        n_groups = len(self.group_scores)
        for i in range(pos.shape[0]):
            joint = np.outer(pos[i], neg[i]).ravel()
            masses = np.bincount(self.group_ids, weights=joint, minlength=n_groups)
            if self.kind == MEDIAN:
                out[i] = median_from_masses(self.group_scores, masses)
            else:
                out[i] = mode_from_masses(self.group_scores, masses)
        return out

    def bounds(self, pos: np.ndarray, neg: np.ndarray) -> np.ndarray:
        if self.kind == EXPECTATION:
            return self._expectation(pos, neg, self.env_finite, self.env_inf_mask, self.env_has_inf)
        if self.kind == PHI_PROBABILITY:
            return self._bilinear(pos, self.env_indicator, neg)
        raise ValueError(f"no upper bound defined for measure {self.kind!r}")


@dataclass(slots=True)
class _Node:
    sub: Subgraph
    contain: np.ndarray
    exp_freq: float
    value: float
    bound: float
    pos_dist: np.ndarray
    neg_dist: np.ndarray


class _CandidateList:
    """Bounded best-t buffer ordered by (measure desc, fewer edges, lex edges)."""

    def __init__(self, t: int) -> None:
        self.t = t
        self.entries: list[tuple[tuple, _Node]] = []

    def theta(self) -> float:
        """Measure value of the current worst kept feature; -inf until full."""
        if len(self.entries) < self.t:
            return -math.inf
        return self.entries[-1][1].value

    def offer(self, node: _Node) -> None:
        key = (-node.value, len(node.sub.edges), node.sub.edges)
        if len(self.entries) == self.t and key > self.entries[-1][0]:
            return
        insort(self.entries, (key, node))
        if len(self.entries) > self.t:
            self.entries.pop()

    def export(self, keep_joints: bool) -> tuple[MinedFeature, ...]:
        out = []
        for _, node in self.entries:
            joint = np.outer(node.pos_dist, node.neg_dist) if keep_joints else None
            out.append(MinedFeature(node.sub, node.value, node.exp_freq, joint))
        return tuple(out)


class _Evaluator:
    def __init__(self, dataset: Dataset, cfg: MiningConfig, with_bounds: bool) -> None:
        self.pos_cols = np.array(dataset.pos_indices, dtype=np.intp)
        self.neg_cols = np.array(dataset.neg_indices, dtype=np.intp)
        self.with_bounds = with_bounds
        self.grids = _MeasureGrids(
            cfg.score, cfg.measure, len(self.pos_cols), len(self.neg_cols), with_bounds
        )

    def evaluate(self, subs: list[Subgraph], contain: np.ndarray) -> list[_Node]:
        pos = _batched_support(contain[:, self.pos_cols])
        neg = _batched_support(contain[:, self.neg_cols])
        exp_freq = contain.mean(axis=1)
        values = self.grids.values(pos, neg)
        if self.with_bounds:
            bounds = self.grids.bounds(pos, neg)
        else:
            bounds = np.full(len(subs), math.inf)
        return [
            _Node(
                sub,
                contain[i],
                float(exp_freq[i]),
                float(values[i]),
                float(bounds[i]),
                pos[i],
                neg[i],
            )
            for i, sub in enumerate(subs)
        ]


def _search(dataset: Dataset, cfg: MiningConfig) -> MiningResult:
    if dataset.n_pos < 1 or dataset.n_neg < 1:
        raise ValueError("mining requires at least one graph of each class")
    stats = SearchStats()
    cands = _CandidateList(cfg.t)
    universe = union_graph(dataset)
    edges = sorted(universe.edges)
    if not edges:
        return MiningResult((), stats)

    col = {e: j for j, e in enumerate(edges)}
    probs = np.zeros((len(dataset), len(edges)))
    for i, g in enumerate(dataset.graphs):
        for e, p in g.edges.items():
            probs[i, col[e]] = p

    bound_active = cfg.bound_pruning and cfg.measure.kind in (EXPECTATION, PHI_PROBABILITY)
    evaluator = _Evaluator(dataset, cfg, bound_active)

    roots = [Subgraph((e,)) for e in edges]
    stack = evaluator.evaluate(roots, probs.T.copy())
    stack.reverse()

    while stack:
        node = stack.pop()
        stats.nodes_evaluated += 1
        # Features at or below min_sup are never candidates; the pruning
        # switch only controls whether their subtrees are still explored.
        if node.exp_freq > cfg.min_sup:
            cands.offer(node)
        stats.theta_trace.append(cands.theta())

        if cfg.frequency_pruning and node.exp_freq <= cfg.min_sup:
            stats.frequency_pruned += 1
            continue
        if bound_active and node.bound < cands.theta():
            stats.bound_pruned += 1
            continue
        if cfg.max_edges is not None and len(node.sub.edges) >= cfg.max_edges:
            continue

        kids = children(node.sub, universe)
        if kids:
            added = [next(iter(set(k.edges) - set(node.sub.edges))) for k in kids]
            contain = node.contain * probs[:, [col[e] for e in added]].T
            child_nodes = evaluator.evaluate(kids, contain)
            stack.extend(reversed(child_nodes))

    return MiningResult(cands.export(cfg.keep_joints), stats)


def mine(dataset: Dataset, cfg: MiningConfig) -> MiningResult:
    """Mine the top-t features of the dataset under the given configuration."""
    return _search(dataset, cfg)


def mine_exhaustive(dataset: Dataset, cfg: MiningConfig) -> MiningResult:
    """Reference run with both pruning switches forced off; same output contract."""
    return _search(dataset, replace(cfg, frequency_pruning=False, bound_pruning=False))
