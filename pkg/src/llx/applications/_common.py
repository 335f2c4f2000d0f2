"""Uniform-activity evaluation shared by the three applications."""

from __future__ import annotations

import math
from typing import Callable, Sequence

import numpy as np

from ..criteria import IMPROVED, CertificateReport, VertexRecord, improved_lower_bound
from ..graph import DEFAULT_ENUMERATION_CAP, DependencyGraph
from ..hardcore import DEFAULT_TOL, phi_star, phi_tilde_star

CliqueCover = Callable[[int], Sequence[Sequence[int]]]


def neighborhood_polynomials(
    h: DependencyGraph, mu0: float, cover: CliqueCover, cap: int = DEFAULT_ENUMERATION_CAP
) -> tuple[np.ndarray, np.ndarray, list[str]]:
    """``phi*`` and ``phi~*`` at uniform ``mu0`` for every vertex of ``h``.

    Exact when the closed neighborhood fits under ``cap``; otherwise an upper
    bound from ``cover(x)``, a partition of the open neighborhood into
    cliques (an independent set meets each clique at most once).
    """
    mu = np.full(h.n, mu0)
    star = np.empty(h.n)
    tilde = np.empty(h.n)
    source = []
    for x in range(h.n):
        if h.degree(x) + 1 <= cap:
            star[x] = phi_star(h, x, mu, cap=cap)
            tilde[x] = phi_tilde_star(h, x, mu, cap=cap)
            source.append("exact")
        else:
            tilde[x] = math.prod(1.0 + mu0 * len(c) for c in cover(x))
            star[x] = mu0 + tilde[x]
            source.append("clique_cover")
    return star, tilde, source


def uniform_report(
    h: DependencyGraph,
    p: float,
    mu0: float,
    worst_radius: float,
    cover: CliqueCover,
    details: dict,
    tol: float = DEFAULT_TOL,
    cap: int = DEFAULT_ENUMERATION_CAP,
) -> CertificateReport:
    """Report for an application at uniform ``mu0``.

    The certificate itself uses ``worst_radius`` (the closed-form radius
    from the clique-cover shape), so it passes iff ``p <= worst_radius``.
    The per-instance radii ``mu0 / phi*_x(mu0)`` are evaluated on ``h``
    and reported under ``details["instance"]``; the lower bound uses the
    per-instance ``phi~*`` (exact or clique-cover), valid whenever either
    condition holds.
    """
    pv = np.full(h.n, p)
    if h.n == 0:
        details["instance"] = {"holds": True, "lower_bound": 1.0, "phi_source": []}
        return CertificateReport(IMPROVED, True, [], 1.0, pv[:0], None, details=details)

    records = [VertexRecord(lab, p, worst_radius, worst_radius - p) for lab in h.labels]
    holds = p <= worst_radius + tol
    star, tilde, source = neighborhood_polynomials(h, mu0, cover, cap)
    radii = mu0 / star
    inst_holds = bool(np.all(p <= radii + tol))
    bound = improved_lower_bound(pv, tilde) if (holds or inst_holds) else None
    worst = int(np.argmin(radii))
    details["instance"] = {
        "holds": inst_holds,
        "lower_bound": bound if inst_holds else None,
        "min_radius": float(radii[worst]),
        "worst_vertex": h.labels[worst],
        "phi_source": sorted(set(source)),
    }
    return CertificateReport(
        IMPROVED,
        holds,
        records,
        bound if holds else None,
        np.full(h.n, mu0),
        h.labels[0],
        details=details,
    )
