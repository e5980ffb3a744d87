import math
import random

import numpy as np
import pytest

import ugmine as ug
from ugmine.miner import _batched_support
from conftest import connected_edge_subsets, make_random_dataset

TRIANGLE = ug.CertainGraph(3, frozenset({(0, 1), (0, 2), (1, 2)}))
PATH_UNIVERSE = ug.CertainGraph(3, frozenset({(0, 1), (1, 2)}))


def walk_tree(universe):
    """All (parent, child) pairs of the reverse-search tree."""
    out = []
    stack = [None]
    while stack:
        node = stack.pop()
        for child in ug.children(node, universe):
            out.append((node, child))
            stack.append(child)
    return out


def simple_cfg(t=3, min_sup=0.0, measure=None, score=None, **kw):
    return ug.MiningConfig(
        t=t,
        min_sup=min_sup,
        measure=measure or ug.MeasureSpec("exp"),
        score=score or ug.ScoreFunction("conf"),
        **kw,
    )


class TestCanonicalParent:
    def test_two_edge_path(self):
        g = ug.Subgraph.from_edges([(0, 1), (1, 2)])
        assert ug.canonical_parent(g) == ug.Subgraph.from_edges([(0, 1)])

    def test_triangle(self):
        g = ug.Subgraph.from_edges([(0, 1), (0, 2), (1, 2)])
        assert ug.canonical_parent(g) == ug.Subgraph.from_edges([(0, 1), (0, 2)])

    def test_single_edge_is_root_child(self):
        assert ug.canonical_parent(ug.Subgraph.from_edges([(0, 1)])) is None

    def test_parent_always_exists(self):
        rng = random.Random(3)
        from conftest import random_connected_subgraph, all_pairs

        for _ in range(100):
            g = random_connected_subgraph(rng, all_pairs(5), max_size=6)
            if len(g.edges) > 1:
                parent = ug.canonical_parent(g)
                assert parent is not None
                assert set(parent.edges) < set(g.edges)


class TestChildren:
    def test_root_children_are_single_edges(self):
        kids = ug.children(None, TRIANGLE)
        assert [k.edges for k in kids] == [((0, 1),), ((0, 2),), ((1, 2),)]

    def test_triangle_tree_has_seven_nodes(self):
        assert len(walk_tree(TRIANGLE)) == 7

    def test_path_tree_has_three_nodes(self):
        assert len(walk_tree(PATH_UNIVERSE)) == 3

    def test_ancestor_property(self):
        for parent, child in walk_tree(TRIANGLE):
            if parent is not None:
                assert set(parent.edges) < set(child.edges)
            assert ug.canonical_parent(child) == parent

    def test_enumeration_complete_and_unique(self):
        rng = random.Random(7)
        for trial in range(15):
            num_nodes = rng.randint(3, 6)
            pairs = [
                (u, v)
                for u in range(num_nodes)
                for v in range(u + 1, num_nodes)
            ]
            k = rng.randint(1, min(10, len(pairs)))
            edges = frozenset(rng.sample(pairs, k))
            universe = ug.CertainGraph(num_nodes, edges)
            visited = [child for _, child in walk_tree(universe)]
            expected = connected_edge_subsets(sorted(edges))
            assert len(visited) == len(expected)
            assert {frozenset(v.edges) for v in visited} == expected


class TestMine:
    def test_fig2_top_feature(self, fig2):
        cfg = simple_cfg(t=1, min_sup=0.2)
        result = ug.mine(fig2, cfg)
        assert len(result.features) == 1
        assert result.features[0].subgraph.edges == ((0, 1), (1, 2))
        assert result.features[0].exp_freq == pytest.approx(0.4025, abs=1e-12)

    def test_min_sup_one_empty(self, fig2):
        result = ug.mine(fig2, simple_cfg(t=5, min_sup=1.0))
        assert result.features == ()

    def test_t_larger_than_survivors(self, fig2):
        result = ug.mine(fig2, simple_cfg(t=50, min_sup=0.2))
        got = {f.subgraph.edges for f in result.features}
        # survivors of min_sup 0.2: the two frequent edges and their join
        assert got == {((0, 1),), ((1, 2),), ((0, 1), (1, 2))}

    def test_requires_both_classes(self, fig2):
        ds = ug.Dataset(3, fig2.graphs, (1, 1, 1, 1))
        with pytest.raises(ValueError, match="class"):
            ug.mine(ds, simple_cfg())

    def test_sorted_by_measure_descending(self, fig2):
        result = ug.mine(fig2, simple_cfg(t=10, min_sup=0.0))
        values = [f.measure_value for f in result.features]
        assert values == sorted(values, reverse=True)

    def test_max_edges_caps_depth(self, fig2):
        result = ug.mine(fig2, simple_cfg(t=10, min_sup=0.0, max_edges=1))
        assert all(len(f.subgraph.edges) == 1 for f in result.features)
        assert result.stats.nodes_evaluated == 3

    def test_keep_joints(self, fig2):
        cfg = simple_cfg(t=1, min_sup=0.2, keep_joints=True)
        feature = ug.mine(fig2, cfg).features[0]
        assert feature.joint is not None
        assert feature.joint.shape == (3, 3)
        assert feature.joint.sum() == pytest.approx(1.0, abs=1e-9)
        bf = ug.oracle_joint(feature.subgraph, fig2)
        assert np.max(np.abs(feature.joint - bf)) <= 1e-9

    def test_empty_union_graph(self):
        g = ug.UncertainGraph(3, {})
        ds = ug.Dataset(3, (g, g), (1, -1))
        result = ug.mine(ds, simple_cfg())
        assert result.features == ()
        assert result.stats.nodes_evaluated == 0

    def test_theta_monotone(self, fig2):
        result = ug.mine(fig2, simple_cfg(t=2, min_sup=0.0))
        trace = result.stats.theta_trace
        assert all(a <= b for a, b in zip(trace, trace[1:]))

    def test_deterministic(self, fig2):
        cfg = simple_cfg(t=4, min_sup=0.1)
        r1 = ug.mine(fig2, cfg)
        r2 = ug.mine(fig2, cfg)
        assert r1.features == r2.features
        assert r1.stats.nodes_evaluated == r2.stats.nodes_evaluated

    def test_exhaustive_visits_every_tree_node(self, fig2):
        # union graph is the triangle, whose tree has exactly 7 nodes
        result = ug.mine_exhaustive(fig2, simple_cfg(t=1, min_sup=0.2))
        assert result.stats.nodes_evaluated == 7
        assert result.stats.frequency_pruned == 0
        assert result.stats.bound_pruned == 0


def all_configs(t=3, min_sup=0.15):
    for kind in ug.SCORE_KINDS:
        for measure in ("exp", "median", "mode", "phi-pr"):
            cap = 0.01 if (measure == "exp" and kind in ("ratio", "gtest")) else 0.0
            phi = {"conf": 0.5, "ratio": 1.0, "gtest": 1.0, "hsic": 0.01}[kind]
            yield ug.MiningConfig(
                t=t,
                min_sup=min_sup,
                measure=ug.MeasureSpec(measure, phi if measure == "phi-pr" else None),
                score=ug.ScoreFunction(kind, cap),
            )


class TestPruneSoundness:
    def test_mine_equals_exhaustive(self):
        rng = random.Random(13)
        for trial in range(6):
            ds = make_random_dataset(
                rng, n_graphs=rng.randint(4, 8), num_nodes=4, max_edges=4, prob_lo=0.2
            )
            for cfg in all_configs():
                pruned = ug.mine(ds, cfg)
                full = ug.mine_exhaustive(ds, cfg)
                assert [f.subgraph for f in pruned.features] == [
                    f.subgraph for f in full.features
                ]
                assert [f.measure_value for f in pruned.features] == [
                    f.measure_value for f in full.features
                ]
                assert pruned.stats.nodes_evaluated <= full.stats.nodes_evaluated

    def test_bound_pruning_reduces_visits(self):
        # planted signal concentrates the measure, letting the bound cut branches
        ds = ug.make_preset(
            "adhd-like",
            seed=5,
            planted=ug.Subgraph.from_edges([(0, 1), (1, 2)]),
        )
        # shrink to a small slice to keep this quick
        idx = list(range(10)) + list(range(100, 110))
        small = ug.Dataset(
            ds.num_nodes,
            tuple(ds.graphs[i] for i in idx),
            tuple(ds.labels[i] for i in idx),
        )
        for measure, score in [
            (ug.MeasureSpec("exp"), ug.ScoreFunction("conf")),
            (ug.MeasureSpec("phi-pr", phi=1.0), ug.ScoreFunction("ratio")),
        ]:
            cfg = ug.MiningConfig(t=2, min_sup=0.05, measure=measure, score=score)
            with_bound = ug.mine(small, cfg)
            without = ug.mine(small, ug.MiningConfig(
                t=2, min_sup=0.05, measure=measure, score=score, bound_pruning=False
            ))
            assert [f.subgraph for f in with_bound.features] == [
                f.subgraph for f in without.features
            ]
            assert with_bound.stats.nodes_evaluated <= without.stats.nodes_evaluated


class TestBatchedSupport:
    def test_matches_scalar_dp(self):
        rng = random.Random(17)
        probs = np.array([[rng.random() for _ in range(8)] for _ in range(5)])
        batched = _batched_support(probs)
        for i in range(probs.shape[0]):
            scalar = ug.poisson_binomial(list(probs[i]))
            assert np.max(np.abs(batched[i] - scalar)) == 0.0

    def test_rows_normalized(self):
        rng = random.Random(19)
        probs = np.array([[rng.random() for _ in range(12)] for _ in range(7)])
        batched = _batched_support(probs)
        assert batched.sum(axis=1) == pytest.approx(np.ones(7), abs=1e-9)
