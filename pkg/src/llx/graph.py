"""Dependency graphs over labeled events and independent-set enumeration.

Labels are mapped to dense indices ``0..n-1`` at construction; every
operation below works on indices.  Use :meth:`DependencyGraph.index` and
:meth:`DependencyGraph.label` to translate.
"""

from __future__ import annotations

from numbers import Integral
from typing import Callable, Hashable, Iterable, Iterator, Sequence

from .errors import InvalidInputError, ResourceLimitError

DEFAULT_ENUMERATION_CAP = 25

Label = Hashable


class DependencyGraph:
    """Immutable finite simple graph.

    >>> g = DependencyGraph.from_edges([("a", "b"), ("b", "c")])
    >>> sorted(g.label(i) for i in g.neighborhood(g.index("b")))
    ['a', 'c']
    """

    __slots__ = ("labels", "adjacency", "_index", "_masks")

    def __init__(self, labels: Sequence[Label], adjacency: Sequence[Iterable[int]]):
        labels = tuple(labels)
        if len(set(labels)) != len(labels):
            raise InvalidInputError("vertex labels must be distinct")
        if len(adjacency) != len(labels):
            raise InvalidInputError("adjacency length does not match vertex count")
        n = len(labels)
        adj = tuple(frozenset(int(y) for y in a) for a in adjacency)
        for x, nbrs in enumerate(adj):
            for y in nbrs:
                if not (isinstance(y, Integral) and 0 <= y < n):
                    raise InvalidInputError(f"neighbor index {y!r} out of range")
                if y == x:
                    raise InvalidInputError(f"self-loop at vertex {labels[x]!r}")
                if x not in adj[y]:
                    raise InvalidInputError(
                        f"asymmetric adjacency between {labels[x]!r} and {labels[y]!r}"
                    )
        self.labels = labels
        self.adjacency = adj
        self._index = {lab: i for i, lab in enumerate(labels)}
        self._masks = tuple(sum(1 << y for y in nbrs) for nbrs in adj)

    @classmethod
    def from_edges(
        cls, edges: Iterable[tuple[Label, Label]], vertices: Iterable[Label] = ()
    ) -> "DependencyGraph":
        """Build from label pairs; ``vertices`` fixes order and adds isolated ones.

        Self-loops and repeated edges are rejected.
        """
        labels: list[Label] = []
        index: dict[Label, int] = {}

        def add(lab: Label) -> int:
            if lab not in index:
                index[lab] = len(labels)
                labels.append(lab)
            return index[lab]

        for v in vertices:
            add(v)
        seen: set[frozenset[int]] = set()
        pairs = []
        for u, v in edges:
            if u == v:
                raise InvalidInputError(f"self-loop at vertex {u!r}")
            pairs.append((add(u), add(v)))
        adj: list[set[int]] = [set() for _ in labels]
        for a, b in pairs:
            key = frozenset((a, b))
            if key in seen:
                raise InvalidInputError(
                    f"duplicate edge {labels[a]!r} - {labels[b]!r}"
                )
            seen.add(key)
            adj[a].add(b)
            adj[b].add(a)
        return cls(labels, adj)

    @classmethod
    def complete(cls, n: int) -> "DependencyGraph":
        return cls(range(n), [set(range(n)) - {i} for i in range(n)])

    @classmethod
    def empty(cls, n: int) -> "DependencyGraph":
        return cls(range(n), [set() for _ in range(n)])

    # -- basic queries ---------------------------------------------------

    def __len__(self) -> int:
        return len(self.labels)

    @property
    def n(self) -> int:
        return len(self.labels)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DependencyGraph):
            return NotImplemented
        return self.labels == other.labels and self.adjacency == other.adjacency

    def __hash__(self) -> int:
        return hash((self.labels, self.adjacency))

    def __repr__(self) -> str:
        return f"DependencyGraph(n={self.n}, edges={self.edge_count()})"

    def index(self, label: Label) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise InvalidInputError(f"unknown vertex {label!r}") from None

    def label(self, x: int) -> Label:
        self._check_vertex(x)
        return self.labels[x]

    def _check_vertex(self, x: int) -> None:
        if not (isinstance(x, Integral) and 0 <= x < self.n):
            raise InvalidInputError(f"unknown vertex index {x!r}")

    def _check_set(self, s: Iterable[int]) -> frozenset[int]:
        s = frozenset(s)
        for x in s:
            self._check_vertex(x)
        return s

    def degree(self, x: int) -> int:
        self._check_vertex(x)
        return len(self.adjacency[x])

    def max_degree(self) -> int:
        return max((len(a) for a in self.adjacency), default=0)

    def edge_count(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def edges(self) -> list[tuple[int, int]]:
        return [(x, y) for x, nbrs in enumerate(self.adjacency) for y in sorted(nbrs) if x < y]

    def has_edge(self, x: int, y: int) -> bool:
        self._check_vertex(x)
        self._check_vertex(y)
        return y in self.adjacency[x]

    def neighbor_mask(self, x: int) -> int:
        """Bitmask of the open neighborhood of ``x``."""
        return self._masks[x]

    # -- neighborhoods ---------------------------------------------------

    def neighborhood(self, x: int, closed: bool = False) -> frozenset[int]:
        """Neighbors of ``x``; with ``closed=True`` ``x`` itself is included."""
        self._check_vertex(x)
        nbrs = self.adjacency[x]
        return nbrs | {x} if closed else nbrs

    def set_neighborhood(self, s: Iterable[int]) -> frozenset[int]:
        """Vertices outside ``s`` adjacent to at least one member of ``s``."""
        s = self._check_set(s)
        out: set[int] = set()
        for y in s:
            out |= self.adjacency[y]
        return frozenset(out - s)

    def is_independent(self, s: Iterable[int]) -> bool:
        s = self._check_set(s)
        return all(not (self.adjacency[x] & s) for x in s)

    def restrict(self, removed: Iterable[int]) -> "DependencyGraph":
        """Induced subgraph on the vertices not in ``removed``."""
        removed = self._check_set(removed)
        keep = [x for x in range(self.n) if x not in removed]
        new_index = {old: new for new, old in enumerate(keep)}
        adj = [{new_index[y] for y in self.adjacency[x] if y in new_index} for x in keep]
        return DependencyGraph([self.labels[x] for x in keep], adj)

    def induced(self, keep: Iterable[int]) -> "DependencyGraph":
        keep = self._check_set(keep)
        return self.restrict(set(range(self.n)) - keep)

    # -- independent sets ------------------------------------------------

    def independent_sets(
        self, scope: Iterable[int] | None = None, cap: int = DEFAULT_ENUMERATION_CAP
    ) -> Iterator[tuple[int, ...]]:
        """Yield every independent subset of ``scope`` (default: all vertices).

        Sets come out as sorted index tuples in lexicographic order, starting
        with the empty set.
        """
        order = _scope_order(self, scope, cap)
        masks = self._masks

        def walk(start: int, blocked: int, chosen: tuple[int, ...]):
            yield chosen
            for i in range(start, len(order)):
                v = order[i]
                if not (blocked >> v) & 1:
                    yield from walk(i + 1, blocked | masks[v], chosen + (v,))

        return walk(0, 0, ())


def _scope_order(g: DependencyGraph, scope: Iterable[int] | None, cap: int) -> list[int]:
    order = list(range(g.n)) if scope is None else sorted(g._check_set(scope))
    if len(order) > cap:
        raise ResourceLimitError(
            f"enumeration scope has {len(order)} vertices, cap is {cap}"
        )
    return order


def enumerate_independent_sets(
    g: DependencyGraph,
    scope: Iterable[int] | None = None,
    visitor: Callable[[tuple[int, ...]], object] | None = None,
    cap: int = DEFAULT_ENUMERATION_CAP,
) -> int:
    """Call ``visitor`` on each independent subset of ``scope``; return the count."""
    count = 0
    for r in g.independent_sets(scope, cap=cap):
        if visitor is not None:
            visitor(r)
        count += 1
    return count


def independent_sum(
    g: DependencyGraph,
    weights: Sequence[float],
    scope: Iterable[int] | None = None,
    cap: int = DEFAULT_ENUMERATION_CAP,
) -> float:
    """Sum over independent ``R`` within ``scope`` of the product of ``weights``.

    Same traversal as :meth:`DependencyGraph.independent_sets`, without
    materialising the sets.
    """
    order = _scope_order(g, scope, cap)
    masks = g._masks
    w = {v: float(weights[v]) for v in order}
    total = 0.0

    def walk(start: int, blocked: int, prod: float) -> None:
        nonlocal total
        total += prod
        for i in range(start, len(order)):
            v = order[i]
            if not (blocked >> v) & 1:
                walk(i + 1, blocked | masks[v], prod * w[v])

    walk(0, 0, 1.0)
    return total
