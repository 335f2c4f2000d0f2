"""Independent transversals of a vertex-partitioned graph.

Pick one vertex uniformly from each class.  The bad event for a cross-class
edge ``{a, b}`` is that both endpoints are picked (probability ``1/s**2``);
two such events are dependent iff their edges touch a common class.  With
``s`` the (equalised) class size and ``Delta`` the maximum degree, uniform
activity ``1/(s*Delta)`` certifies the family whenever ``s >= 4*Delta``.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

import numpy as np

from ..criteria import CertificateReport
from ..errors import InvalidInputError, ResourceLimitError
from ..graph import DEFAULT_ENUMERATION_CAP, DependencyGraph
from ..hardcore import DEFAULT_TOL
from ._common import uniform_report


def _label_key(label):
    return (not isinstance(label, (int, float)), label if isinstance(label, (int, float)) else str(label))


@dataclass(frozen=True)
class PartitionedGraph:
    """Base graph plus a partition of its vertices into classes (index tuples)."""

    graph: DependencyGraph
    classes: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        classes = tuple(tuple(c) for c in self.classes)
        object.__setattr__(self, "classes", classes)
        seen: set[int] = set()
        for c in classes:
            if not c:
                raise InvalidInputError("empty vertex class")
            for v in c:
                self.graph._check_vertex(v)
                if v in seen:
                    raise InvalidInputError(f"vertex {self.graph.labels[v]!r} is in two classes")
                seen.add(v)
        if len(seen) != self.graph.n:
            missing = [self.graph.labels[v] for v in range(self.graph.n) if v not in seen]
            raise InvalidInputError(f"vertices not covered by any class: {missing[:5]!r}")

    @classmethod
    def from_labels(cls, graph: DependencyGraph, classes) -> "PartitionedGraph":
        return cls(graph, tuple(tuple(graph.index(lab) for lab in c) for c in classes))

    @property
    def n(self) -> int:
        return len(self.classes)

    @property
    def s(self) -> int:
        return min((len(c) for c in self.classes), default=0)

    @property
    def delta(self) -> int:
        return self.graph.max_degree()


@dataclass(frozen=True)
class TransversalStructure:
    """Dependency structure of the transversal events.

    ``classes`` are the equalised classes (base-graph indices), ``edges`` the
    cross-class edges in ``graph`` order, ``h`` the dependency graph whose
    vertex ``i`` is ``edges[i]``.
    """

    base: DependencyGraph
    classes: tuple[tuple[int, ...], ...]
    edges: tuple[tuple[int, int], ...]
    h: DependencyGraph
    p: float
    s: int
    delta: int
    delta_base: int
    class_of: dict

    def cover(self, e: int) -> list[list[int]]:
        """Partition of the H-neighbors of edge ``e`` into two cliques."""
        ca = self.class_of[self.edges[e][0]]
        first, second = [], []
        for f in self.h.neighborhood(e):
            u, v = self.edges[f]
            if ca in (self.class_of[u], self.class_of[v]):
                first.append(f)
            else:
                second.append(f)
        return [first, second]


def equalize_classes(pg: PartitionedGraph) -> tuple[tuple[int, ...], ...]:
    """Truncate every class to the smallest class size, keeping the first labels."""
    s = pg.s
    g = pg.graph
    return tuple(
        tuple(sorted(sorted(c, key=lambda v: _label_key(g.labels[v]))[:s]))
        for c in pg.classes
    )


def build_transversal_dependency(pg: PartitionedGraph) -> TransversalStructure:
    g = pg.graph
    classes = equalize_classes(pg)
    s = pg.s
    class_of = {v: i for i, c in enumerate(classes) for v in c}
    kept = set(class_of)
    delta = max((len(g.adjacency[v] & kept) for v in kept), default=0)
    edges = tuple(
        (u, v) for u, v in g.edges() if u in kept and v in kept and class_of[u] != class_of[v]
    )
    by_class: dict[int, list[int]] = {}
    for i, (u, v) in enumerate(edges):
        by_class.setdefault(class_of[u], []).append(i)
        by_class.setdefault(class_of[v], []).append(i)
    adj: list[set[int]] = [set() for _ in edges]
    for members in by_class.values():
        for i in members:
            adj[i].update(members)
    for i in range(len(edges)):
        adj[i].discard(i)
    labels = [(g.labels[u], g.labels[v]) for u, v in edges]
    h = DependencyGraph(labels, adj)
    st = TransversalStructure(
        g, classes, edges, h, 1.0 / s**2 if s else 0.0, s, delta, g.max_degree(), class_of
    )
    _check_structure(st)
    return st


def _check_structure(st: TransversalStructure) -> None:
    bound = 2 * st.s * st.delta
    if st.h.n and not st.h.max_degree() < bound:
        raise AssertionError(f"H has degree {st.h.max_degree()}, expected < {bound}")
    for e in range(st.h.n):
        for clique in st.cover(e):
            if len(clique) + 1 > st.s * st.delta:
                raise AssertionError("neighborhood clique larger than s*Delta")


def check_transversal(
    pg: PartitionedGraph, tol: float = DEFAULT_TOL, cap: int = DEFAULT_ENUMERATION_CAP
) -> CertificateReport:
    """Certify an independent transversal via ``s >= 4*Delta``.

    The certificate uses ``mu0 = 1/(s*Delta)`` and the closed-form radius
    ``mu0 / (1 + s*Delta*mu0)**2 = 1/(4*s*Delta)``.  Without cross-class
    edges there are no bad events and the instance is certified outright.
    """
    st = build_transversal_dependency(pg)
    s, delta = st.s, st.delta
    details = {
        "application": "transversal",
        "n": pg.n,
        "s": s,
        "delta": delta,
        "delta_base": st.delta_base,
        "events": st.h.n,
        "p": st.p,
        "threshold": "s >= 4*delta",
        "threshold_holds": s >= 4 * delta,
        "classical_threshold": "s >= 2e*delta",
        "classical_threshold_holds": s >= 2 * math.e * delta,
    }
    if st.h.n == 0:
        details["mu0"] = None
        return uniform_report(st.h, st.p, 0.0, 0.0, st.cover, details, tol, cap)
    mu0 = 1.0 / (s * delta)
    details["mu0"] = mu0
    worst_radius = mu0 / (1.0 + s * delta * mu0) ** 2
    return uniform_report(st.h, st.p, mu0, worst_radius, st.cover, details, tol, cap)


def transversal_sampler(st: TransversalStructure):
    """``sampler(rng) -> True`` when the random pick is an independent set."""
    classes = st.classes
    s = st.s
    edges = st.edges

    def sample(rng: random.Random) -> bool:
        chosen = {c[rng.randrange(s)] for c in classes}
        return not any(u in chosen and v in chosen for u, v in edges)

    return sample


def sample_transversal(pg: PartitionedGraph, seed: int) -> tuple[list, bool]:
    """One uniform pick per (equalised) class; returns labels and independence."""
    st = build_transversal_dependency(pg)
    rng = random.Random(seed)
    picks = [c[rng.randrange(st.s)] for c in st.classes]
    return [pg.graph.labels[v] for v in picks], pg.graph.is_independent(picks)


def exact_transversal_probability(st: TransversalStructure, max_choices: int = 10**6) -> float:
    """Exact probability that the uniform pick is independent, by enumeration."""
    n = len(st.classes)
    total = st.s**n
    if total > max_choices:
        raise ResourceLimitError(f"{total} transversal choices exceed {max_choices}")
    if not st.edges:
        return 1.0
    pos = {v: (i, c.index(v)) for i, c in enumerate(st.classes) for v in c}
    picks = np.stack(np.unravel_index(np.arange(total), (st.s,) * n), axis=1)
    bad = np.zeros(total, dtype=bool)
    for u, v in st.edges:
        (cu, iu), (cv, iv) = pos[u], pos[v]
        bad |= (picks[:, cu] == iu) & (picks[:, cv] == iv)
    return float((total - np.count_nonzero(bad)) / total)
