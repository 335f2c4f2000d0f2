"""Brute-force reference computations, deliberately independent of llx internals.

Everything here works from an explicit edge set and plain subset
enumeration; nothing calls into the package's enumerator or recursions.
"""

from __future__ import annotations

import itertools
import math
import random

from llx.graph import DependencyGraph


def edge_set(g: DependencyGraph) -> set[frozenset[int]]:
    return {frozenset((x, y)) for x in range(g.n) for y in g.adjacency[x]}


def is_independent(edges: set[frozenset[int]], s) -> bool:
    return all(frozenset(pair) not in edges for pair in itertools.combinations(s, 2))


def independent_subsets(g: DependencyGraph, scope=None) -> list[tuple[int, ...]]:
    """Naive 2^|scope| filter."""
    scope = sorted(range(g.n) if scope is None else scope)
    edges = edge_set(g)
    out = []
    for r in range(len(scope) + 1):
        for s in itertools.combinations(scope, r):
            if is_independent(edges, s):
                out.append(s)
    return out


def poly(g: DependencyGraph, w, scope=None) -> float:
    return math.fsum(math.prod(w[x] for x in s) for s in independent_subsets(g, scope))


def closed_nbhd(g, x):
    return [y for y in range(g.n) if y == x or frozenset((x, y)) in edge_set(g)]


def open_nbhd(g, x):
    return [y for y in range(g.n) if frozenset((x, y)) in edge_set(g)]


def shearer_alternating(g: DependencyGraph, p, s) -> float:
    """P(S) straight from its definition as a signed sum over supersets."""
    s = set(s)
    total = []
    for u in independent_subsets(g):
        if s.issubset(u):
            total.append((-1) ** (len(u) - len(s)) * math.prod(p[x] for x in u))
    return math.fsum(total)


def random_graph(rng: random.Random, n: int, density: float | None = None) -> DependencyGraph:
    if density is None:
        density = rng.random()
    edges = [(a, b) for a, b in itertools.combinations(range(n), 2) if rng.random() < density]
    return DependencyGraph.from_edges(edges, vertices=range(n))
