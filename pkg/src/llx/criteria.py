"""Local-lemma certificates: classical, improved (cluster expansion), Shearer.

Each ``check_*`` returns a :class:`CertificateReport`.  The classical and
improved checks compare every ``p_x`` with a per-vertex radius computed from
activities ``mu``; Shearer's check is exact and needs no activities.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, NamedTuple

import numpy as np

from .errors import InvalidInputError, ResourceLimitError
from .fixedpoint import find_mu
from .graph import DEFAULT_ENUMERATION_CAP, DependencyGraph
from .hardcore import (
    DEFAULT_TOL,
    ActivityLike,
    as_activity,
    phi_classical,
    phi_star,
    phi_tilde_star,
    subgraph_partition_table,
)

DEFAULT_SHEARER_CAP = 14

CLASSICAL = "classical"
IMPROVED = "improved"
SHEARER = "shearer"
METHODS = (CLASSICAL, IMPROVED, SHEARER)


def json_label(label: Any) -> Any:
    if isinstance(label, (str, int)) and not isinstance(label, bool):
        return label
    if isinstance(label, tuple):
        return list(label)
    return str(label)


@dataclass
class VertexRecord:
    label: Any
    p: float
    radius: float | None
    slack: float | None

    def to_dict(self) -> dict:
        return {
            "label": json_label(self.label),
            "p": float(self.p),
            "radius": None if self.radius is None else float(self.radius),
            "slack": None if self.slack is None else float(self.slack),
        }


@dataclass
class CertificateReport:
    method: str
    holds: bool
    vertices: list[VertexRecord]
    lower_bound: float | None = None
    mu: np.ndarray | None = None
    worst_vertex: Any = None
    worst_subset: list | None = None
    details: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.lower_bound is not None and not self.holds:
            raise ValueError("a failing certificate cannot carry a lower bound")

    def to_dict(self) -> dict:
        out = {
            "method": self.method,
            "holds": bool(self.holds),
            "lower_bound": None if self.lower_bound is None else float(self.lower_bound),
            "mu": None
            if self.mu is None
            else {str(v.label): float(m) for v, m in zip(self.vertices, self.mu)},
            "vertices": [v.to_dict() for v in self.vertices],
            "worst_vertex": None if self.worst_vertex is None else json_label(self.worst_vertex),
        }
        if self.worst_subset is not None:
            out["worst_subset"] = [json_label(x) for x in self.worst_subset]
        if self.details:
            out["details"] = self.details
        return out


# -- radii -----------------------------------------------------------------


def radius_classical(g: DependencyGraph, x: int, mu: ActivityLike) -> float:
    mu = as_activity(g, mu, "activity")
    return float(mu[x] / phi_classical(g, x, mu))


def radius_star(
    g: DependencyGraph, x: int, mu: ActivityLike, cap: int = DEFAULT_ENUMERATION_CAP
) -> float:
    mu = as_activity(g, mu, "activity")
    return float(mu[x] / phi_star(g, x, mu, cap=cap))


def radius_bar(
    g: DependencyGraph, x: int, mu: ActivityLike, cap: int = DEFAULT_ENUMERATION_CAP
) -> float:
    """Largest ``p_x`` for which ``(1-p_x)**phi~*_x >= 1/(1+mu_x)``."""
    mu = as_activity(g, mu, "activity")
    return -math.expm1(-math.log1p(mu[x]) / phi_tilde_star(g, x, mu, cap=cap))


def radius_tilde_star(
    g: DependencyGraph, x: int, mu: ActivityLike, cap: int = DEFAULT_ENUMERATION_CAP
) -> float:
    mu = as_activity(g, mu, "activity")
    return float(mu[x] / ((1.0 + mu[x]) * phi_tilde_star(g, x, mu, cap=cap)))


class RadiusChain(NamedTuple):
    """``strict`` flags whether star > bar, bar > tilde_star and
    tilde_star > classical, each by more than the tolerance."""

    classical: float
    tilde_star: float
    bar: float
    star: float
    strict: tuple[bool, bool, bool]


def radius_chain(
    g: DependencyGraph, x: int, mu: ActivityLike, tol: float = 1e-12
) -> RadiusChain:
    """The four radii at ``x``, checked to satisfy R <= R~* <= R_bar <= R*.

    Raises ``ArithmeticError`` if the ordering fails by more than ``tol``.
    """
    mu = as_activity(g, mu, "activity")
    r = radius_classical(g, x, mu)
    rt = radius_tilde_star(g, x, mu)
    rb = radius_bar(g, x, mu)
    rs = radius_star(g, x, mu)
    if not (r <= rt + tol and rt <= rb + tol and rb <= rs + tol):
        raise ArithmeticError(f"radius chain out of order at vertex {x}: {(r, rt, rb, rs)}")
    return RadiusChain(r, rt, rb, rs, (rs - rb > tol, rb - rt > tol, rt - r > tol))


# -- checks ----------------------------------------------------------------


def _per_vertex(
    g: DependencyGraph, p: np.ndarray, radii: list[float] | None, tol: float
) -> tuple[list[VertexRecord], bool, Any]:
    if radii is None:
        return [VertexRecord(lab, p[i], None, None) for i, lab in enumerate(g.labels)], False, None
    records = [
        VertexRecord(lab, p[i], radii[i], radii[i] - p[i]) for i, lab in enumerate(g.labels)
    ]
    holds = all(rec.slack >= -tol for rec in records)
    worst = min(records, key=lambda rec: rec.slack).label if records else None
    return records, holds, worst


def check_classical(
    g: DependencyGraph, p: ActivityLike, mu: ActivityLike, tol: float = DEFAULT_TOL
) -> CertificateReport:
    """Classical condition ``p_x <= mu_x / prod_{N[x]}(1+mu_y)``.

    On success the bound is ``prod_x 1/(1+mu_x)``.
    """
    p = as_activity(g, p, "probability")
    mu = as_activity(g, mu, "activity")
    radii = [radius_classical(g, x, mu) for x in range(g.n)]
    records, holds, worst = _per_vertex(g, p, radii, tol)
    bound = math.exp(-float(np.sum(np.log1p(mu)))) if holds else None
    return CertificateReport(CLASSICAL, holds, records, bound, mu, worst)


def improved_lower_bound(p: np.ndarray, phi_tilde: np.ndarray) -> float:
    """``prod_x (1-p_x)**phi~*_x``."""
    return math.exp(float(np.sum(phi_tilde * np.log1p(-p))))


def check_improved(
    g: DependencyGraph,
    p: ActivityLike,
    mu: ActivityLike | None = None,
    tol: float = DEFAULT_TOL,
    safety: float = 0.999,
    cap: int = DEFAULT_ENUMERATION_CAP,
) -> CertificateReport:
    """Improved condition ``p_x <= mu_x / phi*_x(mu)``.

    On success the bound is ``prod_x (1-p_x)**phi~*_x(mu)``.  Without ``mu``
    the activities come from :func:`llx.fixedpoint.find_mu`; if that search
    fails the report is evaluated at its last finite iterate.
    """
    p = as_activity(g, p, "probability")
    if np.any(p >= 1):
        raise InvalidInputError("the improved criterion needs every p_x < 1")
    details: dict = {}
    if mu is None:
        found, trace = find_mu(g, p, safety=safety)
        details["mu_source"] = "fixed_point"
        details["fixed_point"] = {
            "verdict": trace.verdict.value,
            "iterations": trace.iterations,
            "residual": float(trace.residual),
            "safety": safety,
        }
        if found is None:
            mu = trace.final if np.all(np.isfinite(trace.final)) else None
        else:
            mu = found
    else:
        mu = as_activity(g, mu, "activity")
        details["mu_source"] = "given"

    if mu is None:
        records, holds, worst = _per_vertex(g, p, None, tol)
        return CertificateReport(IMPROVED, False, records, None, None, worst, details=details)

    radii = [radius_star(g, x, mu, cap=cap) for x in range(g.n)]
    records, holds, worst = _per_vertex(g, p, radii, tol)
    bound = None
    if holds:
        phi_tilde = np.array([phi_tilde_star(g, x, mu, cap=cap) for x in range(g.n)])
        bound = improved_lower_bound(p, phi_tilde)
    return CertificateReport(IMPROVED, holds, records, bound, mu, worst, details=details)


def check_shearer(
    g: DependencyGraph,
    p: ActivityLike,
    tol: float = DEFAULT_TOL,
    max_vertices: int = DEFAULT_SHEARER_CAP,
) -> CertificateReport:
    """Shearer's exact criterion ``P(S) >= 0`` for every ``S``.

    ``P(S)`` vanishes for dependent ``S``; for independent ``S`` it equals
    ``Z`` of the graph with ``S`` and its neighborhood removed, evaluated at
    ``-p``, times ``prod_S p``.  All those ``Z`` values come from one table
    over induced subgraphs.  On success the bound is ``P(empty) = Z_G(-p)``.
    """
    p = as_activity(g, p, "probability")
    if g.n > max_vertices:
        raise ResourceLimitError(
            f"Shearer check on {g.n} vertices exceeds the cap of {max_vertices}; "
            "use the improved criterion instead"
        )
    table = subgraph_partition_table(g, -p, cap=max_vertices)
    full = (1 << g.n) - 1
    pl = p.tolist()
    worst_val = math.inf
    worst_set: tuple[int, ...] = ()
    count = 0
    for s in g.independent_sets(cap=max_vertices):
        blocked = 0
        prod = 1.0
        for y in s:
            blocked |= (1 << y) | g.neighbor_mask(y)
            prod *= pl[y]
        val = table[full & ~blocked] * prod
        count += 1
        if val < worst_val:
            worst_val, worst_set = val, s
    p_empty = table[full]
    holds = worst_val >= -tol
    records, _, _ = _per_vertex(g, p, None, tol)
    details = {
        "P_empty": p_empty,
        "min_P": worst_val,
        "independent_sets": count,
    }
    return CertificateReport(
        SHEARER,
        holds,
        records,
        p_empty if holds else None,
        None,
        None,
        [g.labels[x] for x in worst_set],
        details,
    )
