import itertools
import random

import numpy as np
import pytest

from llx.errors import InvalidInputError, ResourceLimitError
from llx.graph import DependencyGraph
from llx.hardcore import (
    as_activity,
    masked_activities,
    partition_function,
    partition_function_elim,
    phi_classical,
    phi_star,
    phi_tilde_star,
    shearer_P,
    subgraph_partition_table,
)

import oracles

K2 = DependencyGraph.complete(2)
K3 = DependencyGraph.complete(3)
PATH = DependencyGraph.from_edges([("a", "b"), ("b", "c")])
C4 = DependencyGraph.from_edges([(0, 1), (1, 2), (2, 3), (3, 0)])
B = PATH.index("b")


def test_phi_classical_examples():
    assert phi_classical(DependencyGraph.empty(1), 0, 0.5) == 1.5
    assert phi_classical(PATH, B, 0.5) == pytest.approx(3.375, abs=1e-15)
    assert phi_classical(C4, 2, 0.0) == 1.0


def test_phi_star_examples():
    assert phi_star(K3, 0, 0.2) == pytest.approx(1.6, abs=1e-15)
    assert phi_star(PATH, B, 0.5) == pytest.approx(2.75, abs=1e-15)
    assert phi_star(DependencyGraph.empty(1), 0, 0.5) == 1.5


def test_phi_tilde_star_examples():
    assert phi_tilde_star(PATH, B, 0.5) == pytest.approx(2.25, abs=1e-15)
    assert phi_tilde_star(DependencyGraph.empty(1), 0, 0.7) == 1.0
    assert phi_tilde_star(K3, 1, 0.2) == pytest.approx(1.4, abs=1e-15)


def test_negative_activity_rejected():
    with pytest.raises(InvalidInputError):
        phi_star(K2, 0, [-0.1, 0.2])
    with pytest.raises(InvalidInputError):
        phi_classical(K2, 0, -1)
    with pytest.raises(InvalidInputError):
        as_activity(K2, [0.2, 1.1], "probability")
    with pytest.raises(InvalidInputError):
        as_activity(K2, [0.2], "activity")


def test_activity_by_label():
    mu = as_activity(PATH, {"a": 1, "b": 2, "c": 3}, "activity")
    assert mu.tolist() == [1.0, 2.0, 3.0]
    with pytest.raises(InvalidInputError):
        as_activity(PATH, {"a": 1, "zz": 2}, "activity")


def test_partition_function_examples():
    for z in (partition_function, partition_function_elim):
        assert z(DependencyGraph.empty(2), 0.5) == pytest.approx(2.25)
        assert z(K2, [0.3, 0.4]) == pytest.approx(1.7)
        assert z(C4, 1.0) == 7
        assert z(DependencyGraph.empty(1), -0.25) == 0.75
        assert z(C4, 0.0) == 1.0


def test_partition_function_cap():
    g = DependencyGraph.empty(26)
    with pytest.raises(ResourceLimitError):
        partition_function(g, 0.1)
    with pytest.raises(ResourceLimitError):
        partition_function_elim(g, 0.1)


def test_masked_activities_examples():
    p = np.array([0.1, 0.2, 0.3])
    assert masked_activities(PATH, p, ()).tolist() == p.tolist()
    assert masked_activities(K2, [0.2, 0.3], {0}).tolist() == [0.0, 0.0]
    assert masked_activities(PATH, 0.1, {PATH.index("a")}).tolist() == [0.0, 0.0, 0.1]


def test_shearer_P_examples():
    assert shearer_P(K2, 0.6) == pytest.approx(-0.2)
    p = [0.1, 0.2, 0.3]
    assert shearer_P(DependencyGraph.empty(3), p) == pytest.approx(0.9 * 0.8 * 0.7)
    assert shearer_P(K2, [0.2, 0.3], {0}, debug=True) == pytest.approx(0.2)
    assert shearer_P(K2, [0.2, 0.3], {0, 1}) == 0.0


def test_fft_identity():
    rng = random.Random(1)
    for _ in range(100):
        g = oracles.random_graph(rng, rng.randint(1, 10))
        mu = [rng.uniform(0, 2) for _ in range(g.n)]
        for x in range(g.n):
            assert phi_star(g, x, mu) == pytest.approx(mu[x] + phi_tilde_star(g, x, mu), rel=1e-12, abs=1e-12)


def test_phi_star_matches_bruteforce():
    rng = random.Random(2)
    for _ in range(40):
        g = oracles.random_graph(rng, rng.randint(1, 9))
        mu = [rng.uniform(0, 2) for _ in range(g.n)]
        for x in range(g.n):
            assert phi_star(g, x, mu) == pytest.approx(oracles.poly(g, mu, oracles.closed_nbhd(g, x)), rel=1e-12)
            assert phi_tilde_star(g, x, mu) == pytest.approx(oracles.poly(g, mu, oracles.open_nbhd(g, x)), rel=1e-12)


def test_domination():
    rng = random.Random(3)
    for _ in range(100):
        g = oracles.random_graph(rng, rng.randint(1, 10))
        mu = [rng.uniform(0.01, 2) for _ in range(g.n)]
        for x in range(g.n):
            star, classical = phi_star(g, x, mu), phi_classical(g, x, mu)
            if g.degree(x):
                assert star < classical
            else:
                assert star == pytest.approx(classical)


def test_enumeration_vs_elimination():
    rng = random.Random(4)
    for _ in range(100):
        g = oracles.random_graph(rng, rng.randint(0, 12))
        w = [rng.uniform(-0.5, 1) for _ in range(g.n)]
        a, b = partition_function(g, w), partition_function_elim(g, w)
        assert abs(a - b) <= 1e-12 * max(1.0, abs(a))


def test_partition_function_matches_naive():
    rng = random.Random(5)
    for _ in range(30):
        g = oracles.random_graph(rng, rng.randint(0, 9))
        w = [rng.uniform(-0.5, 1) for _ in range(g.n)]
        assert partition_function(g, w) == pytest.approx(oracles.poly(g, w), rel=1e-12, abs=1e-12)


def test_alternating_equals_masked():
    rng = random.Random(6)
    for _ in range(40):
        g = oracles.random_graph(rng, rng.randint(1, 8))
        p = [rng.uniform(0, 0.5) for _ in range(g.n)]
        for r in range(g.n + 1):
            for s in itertools.combinations(range(g.n), r):
                expected = oracles.shearer_alternating(g, p, s)
                assert shearer_P(g, p, s) == pytest.approx(expected, abs=1e-12)


def test_subgraph_table_matches_enumeration():
    rng = random.Random(7)
    for _ in range(20):
        g = oracles.random_graph(rng, rng.randint(1, 7))
        w = np.array([rng.uniform(-0.5, 1) for _ in range(g.n)])
        table = subgraph_partition_table(g, w, cap=14)
        for mask in range(1 << g.n):
            keep = [x for x in range(g.n) if mask >> x & 1]
            assert table[mask] == pytest.approx(oracles.poly(g, w, keep), abs=1e-12)


def test_positivity_inside_improved_region():
    from llx.criteria import check_improved

    rng = random.Random(8)
    for _ in range(25):
        g = oracles.random_graph(rng, rng.randint(1, 8))
        mu = np.array([rng.uniform(0.05, 1.5) for _ in range(g.n)])
        r_star = np.array([mu[x] / phi_star(g, x, mu) for x in range(g.n)])
        p = 0.999 * r_star
        assert check_improved(g, p, mu).holds
        for frac in np.linspace(0, 1, 6):
            for _ in range(3):
                q = p * frac * np.array([rng.random() for _ in range(g.n)]) ** 0.2
                assert partition_function(g, -q) > 0
            assert partition_function(g, -p * frac) > 0
