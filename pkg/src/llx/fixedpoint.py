"""Fixed-point search for certifying activities.

The map ``T_x(nu) = rho_x * phi*_x(nu)`` is monotone on the nonnegative
orthant.  Iterating it from zero either converges to its minimal fixed point
``nu*`` (then ``rho_x = nu*_x / phi*_x(nu*)``, so ``nu*`` certifies any
``p <= rho`` for the improved criterion) or escapes to infinity.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidInputError
from .graph import DEFAULT_ENUMERATION_CAP, DependencyGraph
from .hardcore import DEFAULT_TOL, ActivityLike, as_activity, phi_star

DEFAULT_FP_TOL = 1e-12
DEFAULT_MAX_ITER = 100_000
DEFAULT_DIVERGENCE_CAP = 1e6
GROWTH_PATIENCE = 50


class Verdict(str, enum.Enum):
    CONVERGED = "converged"
    DIVERGED = "diverged"
    BUDGET_EXHAUSTED = "budget_exhausted"


class PhiStarKernel:
    """Vectorised evaluation of ``phi*_x`` at every vertex.

    The independent subsets of each closed neighborhood are enumerated once
    and stored as a padded index matrix; index ``n`` points at a constant 1.
    """

    def __init__(self, g: DependencyGraph, cap: int = DEFAULT_ENUMERATION_CAP):
        self.n = g.n
        rows: list[tuple[int, ...]] = []
        owners: list[int] = []
        for x in range(g.n):
            for r in g.independent_sets(g.neighborhood(x, closed=True), cap=cap):
                rows.append(r)
                owners.append(x)
        width = max((len(r) for r in rows), default=0)
        idx = np.full((len(rows), max(width, 1)), g.n, dtype=np.intp)
        for i, r in enumerate(rows):
            idx[i, : len(r)] = r
        self._idx = idx
        self._owners = np.asarray(owners, dtype=np.intp)
        self._ext = np.ones(g.n + 1)

    def __call__(self, nu: np.ndarray) -> np.ndarray:
        ext = self._ext.copy()
        ext[: self.n] = nu
        terms = ext[self._idx].prod(axis=1)
        return np.bincount(self._owners, weights=terms, minlength=self.n)


def t_map(g: DependencyGraph, rho: ActivityLike, nu: ActivityLike) -> np.ndarray:
    """One application of ``nu -> rho * phi*(nu)``."""
    rho = as_activity(g, rho, "activity")
    nu = as_activity(g, nu, "activity")
    return np.array([rho[x] * phi_star(g, x, nu) for x in range(g.n)])


@dataclass
class FixedPointTrace:
    verdict: Verdict
    iterations: int
    residual: float
    final: np.ndarray
    rho: np.ndarray
    iterates: list[np.ndarray] = field(default_factory=list)

    @property
    def converged(self) -> bool:
        return self.verdict is Verdict.CONVERGED

    @property
    def fixed_point(self) -> np.ndarray | None:
        return self.final if self.converged else None

    def to_dict(self, labels=None, keep: int = 3) -> dict:
        """JSON-ready summary; only the first and last ``keep`` iterates are kept."""
        its = self.iterates
        if len(its) > 2 * keep:
            shown = its[:keep] + its[-keep:]
            elided = len(its) - 2 * keep
        else:
            shown, elided = its, 0

        def vec(v):
            if labels is None:
                return [float(a) for a in v]
            return {str(lab): float(a) for lab, a in zip(labels, v)}

        return {
            "verdict": self.verdict.value,
            "iterations": self.iterations,
            "residual": float(self.residual),
            "final": vec(self.final),
            "iterates_head_tail": [vec(v) for v in shown],
            "iterates_elided": elided,
        }


def iterate_t_map(
    g: DependencyGraph,
    rho: ActivityLike,
    tol: float = DEFAULT_FP_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    divergence_cap: float = DEFAULT_DIVERGENCE_CAP,
    record: bool = True,
    kernel: PhiStarKernel | None = None,
) -> FixedPointTrace:
    """Iterate the map from ``nu = 0`` until convergence, divergence or budget.

    Divergence is declared when some component exceeds ``divergence_cap`` or
    the residual has failed to shrink for ``GROWTH_PATIENCE`` consecutive
    steps (a linearly escaping orbit keeps a constant residual).
    """
    rho = as_activity(g, rho, "activity")
    kernel = kernel or PhiStarKernel(g)
    nu = np.zeros(g.n)
    iterates = [nu] if record else []
    residual = float("inf")
    growth = 0
    verdict = Verdict.BUDGET_EXHAUSTED
    it = 0
    while it < max_iter:
        it += 1
        new = rho * kernel(nu)
        prev_residual = residual
        residual = float(np.max(np.abs(new - nu), initial=0.0))
        nu = new
        if record:
            iterates.append(nu)
        if not np.all(np.isfinite(nu)) or np.max(nu, initial=0.0) > divergence_cap:
            verdict = Verdict.DIVERGED
            break
        if residual <= tol:
            verdict = Verdict.CONVERGED
            break
        growth = growth + 1 if residual >= prev_residual else 0
        if growth >= GROWTH_PATIENCE:
            verdict = Verdict.DIVERGED
            break
    return FixedPointTrace(verdict, it, residual, nu, rho, iterates)


def find_mu(
    g: DependencyGraph,
    p: ActivityLike,
    safety: float = 0.999,
    tol: float = DEFAULT_FP_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    divergence_cap: float = DEFAULT_DIVERGENCE_CAP,
    check_tol: float = DEFAULT_TOL,
) -> tuple[np.ndarray | None, FixedPointTrace]:
    """Look for ``mu`` with ``p_x <= mu_x / phi*_x(mu)`` at every vertex.

    Runs :func:`iterate_t_map` with ``rho = p / safety``.  Returns
    ``(mu, trace)`` on success and ``(None, trace)`` otherwise.
    """
    if not 0 < safety <= 1:
        raise InvalidInputError("safety must lie in (0, 1]")
    p = as_activity(g, p, "probability")
    if np.any(p >= 1):
        raise InvalidInputError("find_mu needs every p_x < 1")
    kernel = PhiStarKernel(g)
    trace = iterate_t_map(
        g, p / safety, tol=tol, max_iter=max_iter, divergence_cap=divergence_cap,
        record=False, kernel=kernel,
    )
    if not trace.converged:
        return None, trace
    mu = trace.final
    phi = kernel(mu)
    if np.any(p > mu / phi + check_tol):
        return None, trace
    return mu, trace
