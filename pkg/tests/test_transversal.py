import random

import pytest

from llx.applications import (
    PartitionedGraph,
    build_transversal_dependency,
    check_transversal,
    exact_transversal_probability,
    monte_carlo,
    sample_transversal,
    transversal_sampler,
)
from llx.errors import InvalidInputError
from llx.graph import DependencyGraph

import instances


def two_classes_one_edge():
    labels = [f"a{i}" for i in range(4)] + [f"b{i}" for i in range(4)]
    g = DependencyGraph.from_edges([("a0", "b0")], labels)
    return PartitionedGraph.from_labels(g, [labels[:4], labels[4:]])


def test_single_cross_edge():
    st = build_transversal_dependency(two_classes_one_edge())
    assert st.h.n == 1 and st.h.edge_count() == 0
    assert st.p == 1 / 16


def test_two_parallel_edges_give_k2():
    g = DependencyGraph.from_edges([("a1", "b1"), ("a2", "b2")])
    pg = PartitionedGraph.from_labels(g, [["a1", "a2"], ["b1", "b2"]])
    st = build_transversal_dependency(pg)
    assert st.h.n == 2 and st.h.edge_count() == 1
    assert st.p == 0.25


def test_no_cross_edges_is_trivial():
    g = DependencyGraph.from_edges([("a1", "a2"), ("b1", "b2")])
    pg = PartitionedGraph.from_labels(g, [["a1", "a2"], ["b1", "b2"]])
    st = build_transversal_dependency(pg)
    assert st.h.n == 0
    rep = check_transversal(pg)
    assert rep.holds and rep.lower_bound == 1.0


def test_edgeless_base_graph():
    g = DependencyGraph.empty(6)
    pg = PartitionedGraph(g, ((0, 1, 2), (3, 4, 5)))
    rep = check_transversal(pg)
    assert rep.holds and rep.details["delta"] == 0
    assert exact_transversal_probability(build_transversal_dependency(pg)) == 1.0
    for seed in range(10):
        assert sample_transversal(pg, seed)[1]


def test_partition_validation():
    g = DependencyGraph.empty(4)
    with pytest.raises(InvalidInputError):
        PartitionedGraph(g, ((0, 1), (1, 2, 3)))
    with pytest.raises(InvalidInputError):
        PartitionedGraph(g, ((0, 1), (2,)))
    with pytest.raises(InvalidInputError):
        PartitionedGraph(g, ((0, 1), (), (2, 3)))


def test_equalization_truncates_to_first_labels():
    labels = ["a3", "a1", "a2", "b1", "b2"]
    g = DependencyGraph.from_edges([("a3", "b1")], labels)
    pg = PartitionedGraph.from_labels(g, [["a3", "a1", "a2"], ["b1", "b2"]])
    st = build_transversal_dependency(pg)
    assert st.s == 2
    assert [[g.labels[v] for v in c] for c in st.classes] == [["a1", "a2"], ["b1", "b2"]]
    # the only edge touches a truncated vertex
    assert st.h.n == 0


@pytest.mark.parametrize("delta", [1, 2, 3])
def test_threshold_boundary(delta):
    rng = random.Random(delta)
    ok = check_transversal(instances.partitioned_graph(rng, 4, 4 * delta, delta))
    assert ok.holds and ok.details["delta"] == delta
    assert ok.details["threshold_holds"]
    bad = check_transversal(instances.partitioned_graph(rng, 4, 4 * delta - 1, delta))
    assert not bad.holds and not bad.details["threshold_holds"]


def test_structure_bounds_on_random_instances():
    rng = random.Random(41)
    for _ in range(20):
        delta = rng.randint(1, 3)
        classes = rng.randint(2, 5)
        s = rng.randint(-(-delta // (classes - 1)), 6)
        pg = instances.partitioned_graph(rng, classes, s, delta)
        st = build_transversal_dependency(pg)
        if st.h.n:
            assert st.h.max_degree() < 2 * st.s * st.delta
        for e in range(st.h.n):
            cover = st.cover(e)
            assert len(cover) == 2
            for clique in cover:
                assert all(st.h.has_edge(a, b) for a in clique for b in clique if a != b)
                assert len(clique) + 1 <= st.s * st.delta


def test_exact_probability_single_edge():
    st = build_transversal_dependency(two_classes_one_edge())
    assert exact_transversal_probability(st) == 15 / 16


def test_sample_is_deterministic():
    pg = two_classes_one_edge()
    assert sample_transversal(pg, 7) == sample_transversal(pg, 7)
    picks, _ = sample_transversal(pg, 7)
    assert len(picks) == 2


def test_montecarlo_single_edge():
    st = build_transversal_dependency(two_classes_one_edge())
    mc = monte_carlo(transversal_sampler(st), 100_000, seed=3)
    sigma = (15 / 16 * (1 / 16) / mc.trials) ** 0.5
    assert abs(mc.rate - 15 / 16) <= 3 * sigma
    assert mc.low <= 15 / 16 <= mc.high
