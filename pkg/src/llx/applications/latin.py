"""Latin transversals of integer matrices.

For a uniform random permutation ``sigma``, the bad events are
``sigma(i) = j and sigma(i') = j'`` for every four-tuple ``(i, j, i', j')``
with ``i < i'``, ``j != j'`` and ``a[i][j] == a[i'][j']``.  Tuples sharing a
row or a column index are adjacent in the lopsidependency graph.  Indices in
the four-tuples are 1-based, matching matrix notation.
"""

from __future__ import annotations

import itertools
import math
import random
from collections import Counter, defaultdict
from dataclasses import dataclass
from typing import Sequence

from ..criteria import CertificateReport
from ..errors import InvalidInputError, ResourceLimitError
from ..graph import DEFAULT_ENUMERATION_CAP, DependencyGraph
from ..hardcore import DEFAULT_TOL
from ._common import uniform_report

DEFAULT_MAX_TUPLES = 4000

FourTuple = tuple[int, int, int, int]


@dataclass(frozen=True)
class IntegerMatrix:
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        rows = tuple(tuple(int(a) for a in r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        n = len(rows)
        if n < 2:
            raise InvalidInputError("matrix must be at least 2x2")
        if any(len(r) != n for r in rows):
            raise InvalidInputError("matrix must be square")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "IntegerMatrix":
        return cls(tuple(tuple(r) for r in rows))

    @property
    def n(self) -> int:
        return len(self.rows)

    @property
    def k(self) -> int:
        """Largest number of entries sharing one value."""
        return max(Counter(a for r in self.rows for a in r).values())

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.rows[i][j]


def latin_threshold(n: int) -> float:
    """Largest ``k`` covered by the worst-case condition: ``27 (n-1) / 256``."""
    return 27 * (n - 1) / 256


def four_tuples(a: IntegerMatrix) -> list[FourTuple]:
    """All ``(i, j, i', j')`` (1-based) with ``i < i'``, ``j != j'``, equal entries."""
    cells = defaultdict(list)
    for i, row in enumerate(a.rows):
        for j, v in enumerate(row):
            cells[v].append((i, j))
    out = []
    for group in cells.values():
        for (i, j), (i2, j2) in itertools.combinations(group, 2):
            if i != i2 and j != j2:
                out.append((i + 1, j + 1, i2 + 1, j2 + 1))
    out.sort()
    return out


def count_four_tuples(a: IntegerMatrix) -> int:
    cells = defaultdict(list)
    for i, row in enumerate(a.rows):
        for j, v in enumerate(row):
            cells[v].append((i, j))
    return sum(
        1
        for group in cells.values()
        for (i, j), (i2, j2) in itertools.combinations(group, 2)
        if i != i2 and j != j2
    )


@dataclass(frozen=True)
class LatinStructure:
    matrix: IntegerMatrix
    tuples: tuple[FourTuple, ...]
    graph: DependencyGraph
    p: float

    def cover(self, x: int) -> list[list[int]]:
        """Neighbors of tuple ``x`` split into the row-i, row-i', col-j, col-j' cliques."""
        i, j, i2, j2 = self.tuples[x]
        groups: list[list[int]] = [[], [], [], []]
        for y in self.graph.neighborhood(x):
            p, q, p2, q2 = self.tuples[y]
            if i in (p, p2):
                groups[0].append(y)
            elif i2 in (p, p2):
                groups[1].append(y)
            elif j in (q, q2):
                groups[2].append(y)
            else:
                groups[3].append(y)
        return groups


def build_latin_structures(
    a: IntegerMatrix, max_tuples: int = DEFAULT_MAX_TUPLES
) -> LatinStructure:
    """Four-tuples, their lopsidependency graph, and the event probability."""
    tuples = four_tuples(a)
    if len(tuples) > max_tuples:
        raise ResourceLimitError(f"{len(tuples)} four-tuples exceed the cap of {max_tuples}")
    by_row = defaultdict(list)
    by_col = defaultdict(list)
    for t, (i, j, i2, j2) in enumerate(tuples):
        by_row[i].append(t)
        by_row[i2].append(t)
        by_col[j].append(t)
        by_col[j2].append(t)
    adj: list[set[int]] = [set() for _ in tuples]
    for members in itertools.chain(by_row.values(), by_col.values()):
        for t in members:
            adj[t].update(members)
    for t in range(len(tuples)):
        adj[t].discard(t)
    n = a.n
    st = LatinStructure(a, tuple(tuples), DependencyGraph(tuples, adj), 1.0 / (n * (n - 1)))
    _check_structure(st)
    return st


def _check_structure(st: LatinStructure) -> None:
    n, k = st.matrix.n, st.matrix.k
    g = st.graph
    if g.n and not g.max_degree() < 4 * n * k:
        raise AssertionError(f"degree {g.max_degree()} not below 4nk = {4 * n * k}")
    for x in range(g.n):
        for clique in st.cover(x):
            if len(clique) + 1 > n * k:
                raise AssertionError("neighborhood clique larger than nk")


def check_latin(
    a: IntegerMatrix,
    tol: float = DEFAULT_TOL,
    cap: int = DEFAULT_ENUMERATION_CAP,
    max_tuples: int = DEFAULT_MAX_TUPLES,
) -> CertificateReport:
    """Certify a Latin transversal via ``1/(n(n-1)) <= 27/(256 n k)``.

    Uses ``mu0 = 1/(3nk)`` and the four-clique radius ``mu0/(1+nk mu0)**4``.
    When the instance has at most ``max_tuples`` four-tuples, the exact
    per-tuple condition at ``mu0`` is evaluated too; otherwise the lower
    bound falls back on ``phi~* <= (1 + nk mu0)**4 - mu0``.
    """
    n, k = a.n, a.k
    p = 1.0 / (n * (n - 1))
    mu0 = 1.0 / (3 * n * k)
    worst_radius = mu0 / (1.0 + n * k * mu0) ** 4
    details = {
        "application": "latin",
        "n": n,
        "k": k,
        "p": p,
        "mu0": mu0,
        "threshold": "k <= 27(n-1)/256",
        "threshold_k": latin_threshold(n),
        "threshold_holds": k <= latin_threshold(n),
        "classical_threshold": "k <= (n-1)/(4e)",
        "classical_threshold_holds": k <= (n - 1) / (4 * math.e),
        "lopsidependency": "assumed (not verified)",
    }
    try:
        st = build_latin_structures(a, max_tuples)
    except ResourceLimitError as exc:
        count = count_four_tuples(a)
        details["events"] = count
        details["instance"] = {"holds": None, "skipped": str(exc)}
        holds = p <= worst_radius + tol
        bound = None
        if holds:
            tilde = (1.0 + n * k * mu0) ** 4 - mu0
            bound = math.exp(count * tilde * math.log1p(-p))
        return CertificateReport("improved", holds, [], bound, None, None, details=details)
    details["events"] = st.graph.n
    return uniform_report(st.graph, p, mu0, worst_radius, st.cover, details, tol, cap)


def latin_sampler(a: IntegerMatrix):
    """``sampler(rng) -> True`` when a uniform permutation is a Latin transversal."""
    rows = a.rows
    n = a.n

    def sample(rng: random.Random) -> bool:
        perm = list(range(n))
        rng.shuffle(perm)
        return len({rows[i][perm[i]] for i in range(n)}) == n

    return sample


def is_latin(a: IntegerMatrix, perm: Sequence[int]) -> bool:
    return len({a.rows[i][perm[i]] for i in range(a.n)}) == a.n


def sample_latin(a: IntegerMatrix, seed: int) -> tuple[list[int], bool]:
    """Uniform permutation (0-based) by Fisher-Yates from a seeded generator."""
    rng = random.Random(seed)
    perm = list(range(a.n))
    rng.shuffle(perm)
    return perm, is_latin(a, perm)


def exact_latin_probability(a: IntegerMatrix, max_n: int = 8) -> float:
    if a.n > max_n:
        raise ResourceLimitError(f"n = {a.n} exceeds exhaustive limit {max_n}")
    perms = itertools.permutations(range(a.n))
    hits = sum(1 for perm in perms if is_latin(a, perm))
    return hits / math.factorial(a.n)
