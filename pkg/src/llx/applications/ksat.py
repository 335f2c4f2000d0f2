"""k-SAT satisfiability certificates.

Under a uniform random assignment each clause is falsified with probability
``2**-k``; clauses sharing a variable are dependent.  If every variable
occurs in at most ``N`` clauses, the closed neighborhood of a clause is
covered by ``k`` cliques of at most ``N`` clauses, giving the condition
``2**-k <= mu / (1 + N mu)**k``, optimised at ``mu = 1/((k-1) N)``.
"""

from __future__ import annotations

import math
import random
from collections import Counter, defaultdict
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from ..criteria import CertificateReport
from ..errors import InvalidInputError, ResourceLimitError
from ..graph import DEFAULT_ENUMERATION_CAP, DependencyGraph
from ..hardcore import DEFAULT_TOL
from ._common import uniform_report

Clause = tuple[int, ...]


@dataclass(frozen=True)
class CnfFormula:
    """CNF formula in DIMACS literal convention (``-v`` negates variable ``v``)."""

    num_vars: int
    clauses: tuple[Clause, ...]

    def __post_init__(self) -> None:
        clauses = tuple(tuple(int(lit) for lit in c) for c in self.clauses)
        object.__setattr__(self, "clauses", clauses)
        widths = {len(c) for c in clauses}
        if len(widths) > 1:
            raise InvalidInputError(f"clauses have mixed widths {sorted(widths)}")
        for idx, c in enumerate(clauses, 1):
            _validate_clause(c, self.num_vars, f"clause {idx}")

    @classmethod
    def from_clauses(cls, clauses: Iterable[Sequence[int]], num_vars: int | None = None):
        clauses = [tuple(c) for c in clauses]
        if num_vars is None:
            num_vars = max((abs(lit) for c in clauses for lit in c), default=0)
        return cls(num_vars, tuple(clauses))

    @property
    def k(self) -> int:
        return len(self.clauses[0]) if self.clauses else 0

    @property
    def max_occurrence(self) -> int:
        """``N``: the largest number of clauses any variable appears in."""
        counts = Counter(abs(lit) for c in self.clauses for lit in c)
        return max(counts.values(), default=0)

    def variables(self) -> list[int]:
        return sorted({abs(lit) for c in self.clauses for lit in c})

    def satisfied_by(self, assignment: dict[int, bool]) -> bool:
        return all(any(assignment[abs(lit)] == (lit > 0) for lit in c) for c in self.clauses)


def _validate_clause(c: Clause, num_vars: int, where: str) -> None:
    if not c:
        raise InvalidInputError(f"{where}: empty clause")
    variables = [abs(lit) for lit in c]
    if 0 in variables:
        raise InvalidInputError(f"{where}: literal 0 inside clause")
    if len(set(c)) != len(c):
        raise InvalidInputError(f"{where}: duplicate literal")
    if len(set(variables)) != len(variables):
        raise InvalidInputError(f"{where}: variable appears with both signs")
    if num_vars and max(variables) > num_vars:
        raise InvalidInputError(f"{where}: variable {max(variables)} exceeds declared {num_vars}")


def simplified_threshold(k: int) -> float:
    """``2**k / (e k)``."""
    return 2.0**k / (math.e * k)


def exact_threshold(k: int) -> float:
    """``2**k (k-1)**(k-1) / k**k``: largest ``N`` passing at ``mu = 1/((k-1)N)``."""
    return 2.0**k * (k - 1) ** (k - 1) / k**k


def ksat_condition(k: int, n_occ: int, tol: float = DEFAULT_TOL) -> bool:
    """``2**-k <= mu0 / (1 + N mu0)**k`` with ``mu0 = 1/((k-1) N)``."""
    mu0 = 1.0 / ((k - 1) * n_occ)
    return 2.0**-k <= mu0 / (1.0 + n_occ * mu0) ** k + tol


@dataclass(frozen=True)
class KsatStructure:
    formula: CnfFormula
    graph: DependencyGraph
    p: float
    by_var: dict

    def cover(self, c: int) -> list[list[int]]:
        """Neighbors of clause ``c`` grouped by the first shared variable."""
        taken = {c}
        groups = []
        for lit in self.formula.clauses[c]:
            group = [d for d in self.by_var[abs(lit)] if d not in taken]
            taken.update(group)
            groups.append(group)
        return groups


def build_ksat_dependency(f: CnfFormula) -> KsatStructure:
    """Clause graph with an edge between clauses sharing a variable; ``p = 2**-k``."""
    by_var = defaultdict(list)
    for idx, c in enumerate(f.clauses):
        for lit in c:
            by_var[abs(lit)].append(idx)
    adj: list[set[int]] = [set() for _ in f.clauses]
    for members in by_var.values():
        for c in members:
            adj[c].update(members)
    for c in range(len(f.clauses)):
        adj[c].discard(c)
    labels = [f"c{i + 1}" for i in range(len(f.clauses))]
    st = KsatStructure(f, DependencyGraph(labels, adj), 2.0**-f.k, dict(by_var))
    n_occ = f.max_occurrence
    for c in range(st.graph.n):
        groups = st.cover(c)
        if len(groups) > f.k or any(len(g) + 1 > n_occ for g in groups):
            raise AssertionError("clause neighborhood not covered by k cliques of size <= N")
    return st


def check_ksat(
    f: CnfFormula, tol: float = DEFAULT_TOL, cap: int = DEFAULT_ENUMERATION_CAP
) -> CertificateReport:
    """Certify satisfiability of a k-SAT formula from its occurrence bound ``N``.

    The bound on success is a lower bound on the probability that a uniform
    random assignment satisfies ``f``.
    """
    st = build_ksat_dependency(f)
    k, n_occ = f.k, f.max_occurrence
    details = {
        "application": "ksat",
        "k": k,
        "N": n_occ,
        "clauses": len(f.clauses),
        "variables": len(f.variables()),
        "p": st.p,
    }
    if not f.clauses:
        details.update(mu0=None)
        return uniform_report(st.graph, st.p, 0.0, 0.0, st.cover, details, tol, cap)
    if k < 2:
        raise InvalidInputError("the k-SAT certificate needs clause width k >= 2")
    mu0 = 1.0 / ((k - 1) * n_occ)
    worst_radius = mu0 / (1.0 + n_occ * mu0) ** k
    details.update(
        mu0=mu0,
        threshold="N <= 2^k (k-1)^(k-1) / k^k",
        exact_threshold=exact_threshold(k),
        simplified_rule="N <= 2^k / (e k)",
        simplified_threshold=simplified_threshold(k),
        simplified_threshold_holds=n_occ <= simplified_threshold(k),
        classical_threshold="N <= 2^k / (4k)",
        classical_threshold_holds=n_occ <= 2.0**k / (4 * k),
    )
    return uniform_report(st.graph, st.p, mu0, worst_radius, st.cover, details, tol, cap)


def ksat_sampler(f: CnfFormula):
    """``sampler(rng) -> True`` when a uniform assignment satisfies ``f``."""
    nv = f.num_vars
    clauses = [[(abs(lit) - 1, lit > 0) for lit in c] for c in f.clauses]

    def sample(rng: random.Random) -> bool:
        bits = rng.getrandbits(nv) if nv else 0
        return all(any(((bits >> v) & 1) == want for v, want in c) for c in clauses)

    return sample


def sample_assignment(f: CnfFormula, seed: int) -> tuple[dict[int, bool], bool]:
    rng = random.Random(seed)
    bits = rng.getrandbits(f.num_vars) if f.num_vars else 0
    assignment = {v: bool((bits >> (v - 1)) & 1) for v in range(1, f.num_vars + 1)}
    return assignment, f.satisfied_by(assignment)


def exact_ksat_probability(f: CnfFormula, max_vars: int = 20) -> float:
    """Fraction of assignments (of the occurring variables) satisfying ``f``."""
    variables = f.variables()
    m = len(variables)
    if m > max_vars:
        raise ResourceLimitError(f"{m} variables exceed exhaustive limit {max_vars}")
    pos = {v: i for i, v in enumerate(variables)}
    assignments = np.arange(1 << m, dtype=np.int64)
    ok = np.ones(1 << m, dtype=bool)
    for c in f.clauses:
        sat = np.zeros(1 << m, dtype=bool)
        for lit in c:
            bit = (assignments >> pos[abs(lit)]) & 1
            sat |= bit == (1 if lit > 0 else 0)
        ok &= sat
    return float(np.count_nonzero(ok) / (1 << m))
