"""
Lovász number ϑ(G) with two-sided certificates.

Primal: maximize <J, X> subject to tr X = 1, X[u, v] = 0 on edges, X PSD.
Dual: minimize λ_max(A) over symmetric A equal to 1 on the diagonal and on
non-edges, free on edges.

Both problems are solved numerically with cvxpy, then the returned points are
repaired into exactly feasible ones and re-evaluated:
  - the primal X is zeroed on edges, projected back onto the PSD cone, shifted
    by a safe multiple of I until it is provably PSD, and rescaled to trace 1;
    its value rounded down is lower_cert;
  - the dual A is forced to 1 on the diagonal and non-edges; an eigenvalue
    bound with a guaranteed residual term, rounded up, is upper_cert.

When the first installed solver leaves a gap above tol, the next one is tried and
the tighter certificate on each side is kept.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Optional, Tuple

import cvxpy as cp
import numpy as np
import scipy.sparse as sp

from shannon.algebra.rounding import float_down, float_up
from shannon.errors import BudgetError, ConvergenceError, ParameterError
from shannon.graphs.graph import Graph, strong_product

DEFAULT_TOL = 1e-6
MIN_TOL = 1e-9
DEFAULT_MAX_VERTICES = 1000
DEFAULT_MAX_ITERS = 500
_REPAIR_ROUNDS = 20
_SOLVERS = ("CLARABEL", "SCS")
_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class ThetaResult:
    value: float
    lower_cert: float
    upper_cert: float
    gap: float
    tol: float
    solver: str = "closed-form"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "value": self.value,
            "lower_cert": self.lower_cert,
            "upper_cert": self.upper_cert,
            "gap": self.gap,
            "tol": self.tol,
            "solver": self.solver,
        }


def _edge_arrays(g: Graph) -> Tuple[np.ndarray, np.ndarray]:
    edges = list(g.edges())
    us = np.array([u for u, _ in edges], dtype=np.int64)
    vs = np.array([v for _, v in edges], dtype=np.int64)
    return us, vs


def _zero_edges(x: np.ndarray, us: np.ndarray, vs: np.ndarray) -> np.ndarray:
    x = (x + x.T) / 2.0
    x[us, vs] = 0.0
    x[vs, us] = 0.0
    return x


def _project_psd(x: np.ndarray, us: np.ndarray, vs: np.ndarray) -> np.ndarray:
    """Alternates between the PSD cone and the matrices vanishing on edges."""
    for _ in range(_REPAIR_ROUNDS):
        w, v = np.linalg.eigh(x)
        if w[0] >= 0.0:
            break
        x = _zero_edges((v * np.clip(w, 0.0, None)) @ v.T, us, vs)
    return x


def primal_certificate(x: np.ndarray, us: np.ndarray, vs: np.ndarray) -> float:
    """
    Value of a feasible primal point derived from x, rounded down. x is
    symmetrized, zeroed on edges and projected towards the PSD cone, then
    shifted by s*I with s covering the remaining eigenvalue error, so X + sI is
    PSD; the value is sum/trace of that matrix.
    """
    n = x.shape[0]
    x = _project_psd(_zero_edges(x, us, vs), us, vs)
    w = np.linalg.eigvalsh(x)
    scale = max(1.0, float(np.max(np.abs(w))))
    safety = 16.0 * n * _EPS * scale
    shift = max(0.0, safety - float(w[0]))
    x[np.diag_indices(n)] += shift
    trace = Fraction(math.fsum(np.diag(x)))
    if trace <= 0:
        return 1.0
    total = Fraction(math.fsum(x.ravel()))
    return float_down(total / trace)


def dual_certificate(a: np.ndarray, mask: np.ndarray) -> float:
    """
    Upper bound on λ_max of the feasible dual matrix built from a, rounded up.
    With eigh(A) = (w, V), B = V diag(w) V^T:
      λ_max(A) <= λ_max(B) + ||A - B||_F  and  λ_max(B) <= w_max (1 + ||V^T V - I||_F).
    """
    n = a.shape[0]
    a = (a + a.T) / 2.0
    a[~mask] = 1.0
    a[np.diag_indices(n)] = 1.0
    w, v = np.linalg.eigh(a)
    lam = float(w[-1])
    residual = float(np.linalg.norm(a - (v * w) @ v.T))
    omega = float(np.linalg.norm(v.T @ v - np.eye(n)))
    rounding = 8.0 * n * _EPS * (float(np.linalg.norm(a)) + abs(lam) * n)
    bound = Fraction(abs(lam)) * (1 + Fraction(omega)) + Fraction(residual) + Fraction(rounding)
    if lam < 0:
        bound = Fraction(residual) + Fraction(rounding)
    return float_up(bound)


def _installed_solvers() -> Tuple[str, ...]:
    installed = set(cp.installed_solvers())
    return tuple(name for name in _SOLVERS if name in installed)


def _solve(problem: cp.Problem, max_iters: int, solver: str) -> str:
    if solver == "CLARABEL":
        problem.solve(
            solver=cp.CLARABEL,
            max_iter=max_iters,
            tol_gap_abs=1e-10,
            tol_gap_rel=1e-10,
            tol_feas=1e-10,
        )
        return "clarabel"
    problem.solve(solver=cp.SCS, eps_abs=1e-10, eps_rel=1e-10, max_iters=max_iters * 100)
    return "scs"


def _solve_primal(
    n: int, us, vs, max_iters: int, solver: str
) -> Tuple[Optional[np.ndarray], Optional[float], str]:
    x = cp.Variable((n, n), PSD=True)
    constraints = [cp.trace(x) == 1]
    if len(us):
        constraints.append(x[us, vs] == 0)
    problem = cp.Problem(cp.Maximize(cp.sum(x)), constraints)
    try:
        name = _solve(problem, max_iters, solver)
    except cp.error.SolverError:
        return None, None, "failed"
    if x.value is None:
        return None, None, name
    return np.array(x.value, dtype=float), float(problem.value), name


def _solve_dual(n: int, us, vs, max_iters: int, solver: str) -> Optional[np.ndarray]:
    m = len(us)
    rows = np.concatenate([us * n + vs, vs * n + us])
    cols = np.concatenate([np.arange(m), np.arange(m)])
    lift = sp.csr_matrix((np.ones(2 * m), (rows, cols)), shape=(n * n, m))
    y = cp.Variable(m)
    a = cp.reshape(np.ones(n * n) + lift @ y, (n, n), order="C")
    problem = cp.Problem(cp.Minimize(cp.lambda_max(a)))
    try:
        _solve(problem, max_iters, solver)
    except cp.error.SolverError:
        return None
    if y.value is None:
        return None
    return np.ones((n, n)) + (lift @ np.asarray(y.value, dtype=float)).reshape(n, n)


def theta(
    g: Graph,
    tol: float = DEFAULT_TOL,
    max_vertices: int = DEFAULT_MAX_VERTICES,
    max_iters: int = DEFAULT_MAX_ITERS,
) -> ThetaResult:
    """ϑ(g) with lower_cert <= value <= upper_cert and gap <= tol."""
    n = g.n
    if n == 0:
        raise ParameterError("theta needs at least one vertex")
    if not tol >= MIN_TOL:
        raise ParameterError(f"tol must be >= {MIN_TOL}, got {tol}")
    if n > max_vertices:
        raise BudgetError(f"theta refuses {n} vertices (budget {max_vertices})")

    us, vs = _edge_arrays(g)
    mask = g.adjacency_matrix()

    if not len(us):
        # edgeless: X = J/n and A = J are optimal
        lower = primal_certificate(np.full((n, n), 1.0 / n), us, vs)
        upper = dual_certificate(np.ones((n, n)), mask)
        return ThetaResult(float(n), lower, max(upper, lower), max(upper, lower) - lower, tol)

    # trivially feasible starting points: X = I/n (value 1) and A = J (λ_max = n)
    lower, upper = 1.0, float(n)
    estimate: Optional[float] = None
    names = []
    for solver in _installed_solvers():
        x, primal_value, name = _solve_primal(n, us, vs, max_iters, solver)
        a = _solve_dual(n, us, vs, max_iters, solver)
        names.append(name)
        if x is not None:
            lower = max(lower, primal_certificate(x, us, vs))
        if a is not None:
            upper = min(upper, dual_certificate(a, mask))
        if primal_value is not None:
            estimate = primal_value
        if upper - lower <= tol:
            break

    if lower > upper:
        # only possible through solver noise at the trivial bounds
        lower = upper
    gap = upper - lower
    if estimate is None:
        estimate = (lower + upper) / 2.0
    value = min(max(estimate, lower), upper)
    name = "+".join(names) or "none"

    if gap > tol:
        raise ConvergenceError(
            f"theta did not reach tol {tol} on {n} vertices (gap {gap:.3e})",
            gap,
            lower,
            upper,
        )
    return ThetaResult(value, lower, upper, gap, tol, name)


@dataclass(frozen=True)
class ThetaProductReport:
    theta_g: ThetaResult
    theta_h: ThetaResult
    theta_gh: ThetaResult
    difference: float
    allowed: float
    passed: bool

    def to_dict(self) -> Dict[str, Any]:
        return {
            "theta_g": self.theta_g.to_dict(),
            "theta_h": self.theta_h.to_dict(),
            "theta_gh": self.theta_gh.to_dict(),
            "difference": self.difference,
            "allowed": self.allowed,
            "pass": self.passed,
        }


def theta_product_check(
    g: Graph,
    h: Graph,
    tol: float = DEFAULT_TOL,
    check_tol: float = 1e-3,
    max_vertices: int = DEFAULT_MAX_VERTICES,
) -> ThetaProductReport:
    """|ϑ(GH) - ϑ(G)ϑ(H)| against check_tol plus ten times the summed gaps."""
    if g.n * h.n > max_vertices:
        raise BudgetError(f"theta refuses {g.n * h.n} product vertices (budget {max_vertices})")
    tg = theta(g, tol, max_vertices)
    th = theta(h, tol, max_vertices)
    tgh = theta(strong_product(g, h), tol, max_vertices)
    difference = abs(tgh.value - tg.value * th.value)
    allowed = check_tol + 10.0 * (tg.gap + th.gap + tgh.gap)
    return ThetaProductReport(tg, th, tgh, difference, allowed, difference <= allowed)
