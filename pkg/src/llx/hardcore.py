"""Hard-core gas polynomials on a dependency graph.

All quantities are sums over independent vertex sets of activity products:
the closed/open neighborhood polynomials used by the local-lemma radii, the
partition function ``Z_G(w)``, and Shearer's ``P(S)``.  Activities are real
(64-bit floats); ``Z_G`` accepts arbitrary signs.
"""

from __future__ import annotations

import math
from typing import Iterable, Mapping, Sequence, Union

import numpy as np

from .errors import InvalidInputError, ResourceLimitError
from .graph import DEFAULT_ENUMERATION_CAP, DependencyGraph, independent_sum

ActivityLike = Union[float, Sequence[float], Mapping, np.ndarray]

DEFAULT_TOL = 1e-9


def as_activity(g: DependencyGraph, values: ActivityLike, role: str = "real") -> np.ndarray:
    """Coerce ``values`` to a float vector indexed like ``g``.

    Accepts a scalar (broadcast), a sequence in vertex order, or a mapping
    keyed by vertex label.  ``role`` selects the range check: ``"activity"``
    (nonnegative), ``"probability"`` (in [0, 1]) or ``"real"`` (finite).
    """
    if isinstance(values, Mapping):
        out = np.empty(g.n)
        missing = [lab for lab in g.labels if lab not in values]
        if missing:
            raise InvalidInputError(f"no value given for vertices {missing[:5]!r}")
        extra = set(values) - set(g.labels)
        if extra:
            raise InvalidInputError(f"values given for unknown vertices {sorted(map(str, extra))[:5]!r}")
        for i, lab in enumerate(g.labels):
            out[i] = float(values[lab])
    elif np.ndim(values) == 0:
        out = np.full(g.n, float(values))
    else:
        out = np.asarray(values, dtype=float).reshape(-1)
        if out.shape[0] != g.n:
            raise InvalidInputError(
                f"activity vector has length {out.shape[0]}, graph has {g.n} vertices"
            )
    if not np.all(np.isfinite(out)):
        raise InvalidInputError("activities must be finite")
    if role == "activity" and np.any(out < 0):
        raise InvalidInputError("activities must be nonnegative")
    if role == "probability" and (np.any(out < 0) or np.any(out > 1)):
        raise InvalidInputError("probabilities must lie in [0, 1]")
    return out


def phi_classical(g: DependencyGraph, x: int, mu: ActivityLike) -> float:
    """Product of ``1 + mu_y`` over the closed neighborhood of ``x``."""
    mu = as_activity(g, mu, "activity")
    return float(math.prod(1.0 + mu[y] for y in sorted(g.neighborhood(x, closed=True))))


def phi_star(
    g: DependencyGraph, x: int, mu: ActivityLike, cap: int = DEFAULT_ENUMERATION_CAP
) -> float:
    """Independent-set polynomial of the closed neighborhood of ``x`` at ``mu``."""
    mu = as_activity(g, mu, "activity")
    return independent_sum(g, mu, g.neighborhood(x, closed=True), cap=cap)


def phi_tilde_star(
    g: DependencyGraph, x: int, mu: ActivityLike, cap: int = DEFAULT_ENUMERATION_CAP
) -> float:
    """Independent-set polynomial of the open neighborhood of ``x``.

    Does not depend on ``mu[x]``.
    """
    mu = as_activity(g, mu, "activity")
    return independent_sum(g, mu, g.neighborhood(x), cap=cap)


def partition_function(
    g: DependencyGraph, w: ActivityLike, cap: int = DEFAULT_ENUMERATION_CAP
) -> float:
    """``Z_G(w)`` by direct enumeration of independent sets."""
    w = as_activity(g, w)
    return independent_sum(g, w, None, cap=cap)


def partition_function_elim(
    g: DependencyGraph, w: ActivityLike, cap: int = DEFAULT_ENUMERATION_CAP
) -> float:
    """``Z_G(w)`` by the recursion ``Z_G = Z_{G-x} + w_x Z_{G - N[x]}``.

    Subproblems are keyed by the bitmask of surviving vertices; the memo is
    local to the call.
    """
    w = as_activity(g, w).tolist()
    if g.n > cap:
        raise ResourceLimitError(f"graph has {g.n} vertices, cap is {cap}")
    closed = [g.neighbor_mask(x) | (1 << x) for x in range(g.n)]
    memo: dict[int, float] = {0: 1.0}

    def z(mask: int) -> float:
        if mask in memo:
            return memo[mask]
        low = mask & -mask
        x = low.bit_length() - 1
        val = z(mask & ~low) + w[x] * z(mask & ~closed[x])
        memo[mask] = val
        return val

    return z((1 << g.n) - 1)


def masked_activities(
    g: DependencyGraph, p: ActivityLike, s: Iterable[int]
) -> np.ndarray:
    """Copy of ``p`` with ``S`` and its neighborhood zeroed."""
    p = as_activity(g, p, "probability")
    s = frozenset(s)
    out = p.copy()
    for x in s | g.set_neighborhood(s):
        out[x] = 0.0
    return out


def shearer_P(
    g: DependencyGraph,
    p: ActivityLike,
    s: Iterable[int] = (),
    debug: bool = False,
    cap: int = DEFAULT_ENUMERATION_CAP,
    tol: float = DEFAULT_TOL,
) -> float:
    """Shearer's ``P(S)`` as ``Z_G(-p^S) * prod_{y in S} p_y``.

    For a dependent ``S`` no independent superset exists and ``P(S) = 0``.
    With ``debug=True`` the alternating-sign sum over independent supersets
    is evaluated as well and the two must agree within ``tol``.
    """
    p = as_activity(g, p, "probability")
    s = frozenset(s)
    if not g.is_independent(s):
        value = 0.0
    else:
        value = partition_function(g, -masked_activities(g, p, s), cap=cap) * float(
            math.prod(p[y] for y in sorted(s))
        )
    if debug:
        check = _shearer_P_alternating(g, p, s, cap)
        if abs(check - value) > tol:
            raise AssertionError(f"P(S) mismatch: masked {value!r} vs alternating {check!r}")
    return value


def _shearer_P_alternating(
    g: DependencyGraph, p: np.ndarray, s: frozenset[int], cap: int
) -> float:
    total = 0.0
    for u in g.independent_sets(cap=cap):
        if s.issubset(u):
            total += (-1) ** (len(u) - len(s)) * float(math.prod(p[x] for x in u))
    return total


def subgraph_partition_table(g: DependencyGraph, w: ActivityLike, cap: int) -> list[float]:
    """``Z`` of every induced subgraph, indexed by vertex bitmask.

    ``table[m]`` is ``Z_{G[m]}(w)``; filled by the same elimination
    recursion in increasing mask order.  Size ``2**n``.
    """
    w = as_activity(g, w).tolist()
    if g.n > cap:
        raise ResourceLimitError(f"graph has {g.n} vertices, cap is {cap}")
    closed = [g.neighbor_mask(x) | (1 << x) for x in range(g.n)]
    table = [0.0] * (1 << g.n)
    table[0] = 1.0
    for mask in range(1, 1 << g.n):
        low = mask & -mask
        x = low.bit_length() - 1
        table[mask] = table[mask & ~low] + w[x] * table[mask & ~closed[x]]
    return table
