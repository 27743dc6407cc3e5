"""
Certified enclosures of the Shannon capacity Θ(G) and of Θ(p(G1, ..., Gn)).

Lower ends come from exact α of strong powers, α(G^k)^(1/k) rounded down;
upper ends from ϑ certificates (optionally tightened by fitting-matrix ranks),
rounded up. Strict-inequality claims are made only when the compared interval
ends are separated by positive slack.
"""

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

from shannon.algebra.polynomial import Polynomial, evaluate_at
from shannon.algebra.rounding import float_down, float_up, root_down
from shannon.errors import (
    BudgetError,
    DerivationFailedError,
    NoLowerBoundError,
    ParameterError,
)
from shannon.graphs.graph import (
    Graph,
    StableSetWitness,
    graph_sum,
    is_stable,
    power,
    strong_product,
)
from shannon.graphs.graph6 import emit_graph6
from shannon.solvers.alpha import AlphaSolver, alpha_components, fekete_profile
from shannon.solvers.rank import rank_bound_search
from shannon.solvers.theta import DEFAULT_TOL, ThetaResult, theta

DEFAULT_KMAX = 2
DEFAULT_MAX_VERTICES = 5_000_000


@dataclass(frozen=True)
class CapacityInterval:
    lower: float
    upper: float
    lower_provenance: Dict[str, Any] = field(default_factory=dict, compare=False)
    upper_provenance: Dict[str, Any] = field(default_factory=dict, compare=False)
    graph_ref: str = ""

    @classmethod
    def synthetic(cls, lower: float, upper: float) -> "CapacityInterval":
        """An interval with injected ends, for self-tests of the comparisons."""
        return cls(lower, upper, {"source": "synthetic"}, {"source": "synthetic"}, "")

    @property
    def width(self) -> float:
        return self.upper - self.lower

    def collapsed(self, tol: float) -> bool:
        return self.width <= tol * max(1.0, abs(self.upper))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "lower": self.lower,
            "upper": self.upper,
            "width": self.width,
            "lower_provenance": self.lower_provenance,
            "upper_provenance": self.upper_provenance,
            "graph": self.graph_ref,
        }


class StrictnessKind(str, Enum):
    PRODUCT = "product-strict"
    SUM = "sum-strict"


@dataclass(frozen=True)
class StrictnessCertificate:
    kind: StrictnessKind
    numbers: Dict[str, Any]
    slack: float

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": self.kind.value, "numbers": self.numbers, "slack": self.slack}


def _theta_upper(g: Graph, tol: float, theta_max_vertices: int) -> Tuple[float, Dict[str, Any]]:
    result: ThetaResult = theta(g, tol, theta_max_vertices)
    # inflate by the certificate gap
    upper = float_up(Fraction(result.upper_cert) + Fraction(result.gap))
    return upper, {"source": "theta", **result.to_dict()}


def capacity_interval(
    g: Graph,
    kmax: int = DEFAULT_KMAX,
    tol: float = DEFAULT_TOL,
    solver: Optional[AlphaSolver] = None,
    max_vertices: int = DEFAULT_MAX_VERTICES,
    theta_max_vertices: int = 1000,
    rank_primes: Sequence[int] = (),
) -> CapacityInterval:
    """
    [max_k α(G^k)^(1/k), ϑ(G)] over k <= kmax. Powers beyond the vertex budget
    or whose α solve runs out of budget are skipped and recorded.
    """
    if kmax < 1:
        raise ParameterError(f"kmax must be >= 1, got {kmax}")
    solver = solver or AlphaSolver()
    profile = fekete_profile(g, kmax, solver, max_vertices)
    best = profile.best()
    if best is None:
        raise NoLowerBoundError(profile.skipped)

    lower_provenance = {
        "source": "alpha",
        "k": best.k,
        "alpha": best.alpha,
        "witness": best.witness.to_dict(),
        "profile": [s.to_dict() for s in profile.steps],
        "skipped": profile.skipped,
    }
    if g.n == 0:
        upper, upper_provenance = 0.0, {"source": "empty"}
    else:
        upper, upper_provenance = _theta_upper(g, tol, theta_max_vertices)
        for p in rank_primes:
            found = rank_bound_search(g, p, range(1, p))
            if found is not None and found.value < upper:
                upper, upper_provenance = float(found.value), found.to_dict()
    return CapacityInterval(best.root_floor, upper, lower_provenance, upper_provenance, emit_graph6(g))


def intervals_for(
    graphs: Sequence[Graph], kmax: int, tol: float, solver: Optional[AlphaSolver] = None, **kwargs
) -> List[CapacityInterval]:
    return [capacity_interval(g, kmax, tol, solver, **kwargs) for g in graphs]


def poly_capacity_lower(
    p: Polynomial,
    graphs: Sequence[Graph],
    kmax: int = DEFAULT_KMAX,
    tol: float = DEFAULT_TOL,
    solver: Optional[AlphaSolver] = None,
    intervals: Optional[Sequence[CapacityInterval]] = None,
    **kwargs,
) -> float:
    """p at the per-graph lower ends: Θ(p(G)) >= p(Θ(G)) >= p(L)."""
    if len(graphs) != p.nvars:
        raise ParameterError(f"Polynomial has {p.nvars} variables but {len(graphs)} graphs were given")
    if intervals is None:
        intervals = intervals_for(graphs, kmax, tol, solver, **kwargs)
    return evaluate_at(p, [i.lower for i in intervals], "down")


def is_pure_product(p: Polynomial) -> bool:
    return len(p.terms) == 1 and p.terms[0][1] == 1


def poly_capacity_upper(
    p: Polynomial,
    graphs: Sequence[Graph],
    tol: float = DEFAULT_TOL,
    products_only: bool = False,
    intervals: Optional[Sequence[CapacityInterval]] = None,
    theta_max_vertices: int = 1000,
) -> float:
    """
    p at the per-graph ϑ upper certificates. Sound by Θ <= ϑ, ϑ(GH) = ϑ(G)ϑ(H)
    and ϑ(G + H) = ϑ(G) + ϑ(H); with products_only only single products (no
    sums, coefficient 1) are accepted, so additivity is never used.
    """
    if len(graphs) != p.nvars:
        raise ParameterError(f"Polynomial has {p.nvars} variables but {len(graphs)} graphs were given")
    if products_only and not is_pure_product(p):
        raise ParameterError("products_only upper bounds need a single monomial with coefficient 1")
    if intervals is not None:
        # a rank-based end is not multiplicative; use the ϑ certificate it replaced
        uppers = [_theta_end(i, graphs[j], tol, theta_max_vertices) for j, i in enumerate(intervals)]
    else:
        uppers = [_theta_upper(g, tol, theta_max_vertices)[0] if g.n else 0.0 for g in graphs]
    return evaluate_at(p, uppers, "up")


def _theta_end(interval: CapacityInterval, g: Graph, tol: float, theta_max_vertices: int) -> float:
    if interval.upper_provenance.get("source") in ("theta", "synthetic", "empty"):
        return interval.upper
    return _theta_upper(g, tol, theta_max_vertices)[0]


def compare_product_strictness(
    i_g: CapacityInterval, i_h: CapacityInterval, i_gh: CapacityInterval
) -> Optional[StrictnessCertificate]:
    """Certificate iff lower(GH) > upper(G) * upper(H) with positive slack."""
    bound = Fraction(i_g.upper) * Fraction(i_h.upper)
    slack = Fraction(i_gh.lower) - bound
    if slack <= 0:
        return None
    return StrictnessCertificate(
        StrictnessKind.PRODUCT,
        {
            "lower_gh": i_gh.lower,
            "upper_g": i_g.upper,
            "upper_h": i_h.upper,
            "upper_product": float_up(bound),
            "lower_gh_provenance": i_gh.lower_provenance,
        },
        float_down(slack),
    )


def strict_product_certificate(
    g: Graph,
    h: Graph,
    kmax: int = DEFAULT_KMAX,
    tol: float = DEFAULT_TOL,
    solver: Optional[AlphaSolver] = None,
    product_kmax: Optional[int] = None,
    **kwargs,
) -> Tuple[Optional[StrictnessCertificate], Tuple[CapacityInterval, CapacityInterval, CapacityInterval]]:
    """
    Search for Θ(GH) > Θ(G)Θ(H). Returns (certificate or None, intervals used);
    None means inconclusive, never equality. product_kmax bounds the powers
    of GH (default kmax).
    """
    solver = solver or AlphaSolver()
    i_g = capacity_interval(g, kmax, tol, solver, **kwargs)
    i_h = capacity_interval(h, kmax, tol, solver, **kwargs)
    i_gh = capacity_interval(strong_product(g, h), product_kmax or kmax, tol, solver, **kwargs)
    return compare_product_strictness(i_g, i_h, i_gh), (i_g, i_h, i_gh)


def derive_sum_certificate(
    certificate: StrictnessCertificate, i_g: CapacityInterval, i_h: CapacityInterval
) -> StrictnessCertificate:
    """
    From Θ(GH) > Θ(G)Θ(H) to Θ(G + H) > Θ(G) + Θ(H) through
    Θ(G+H)^2 >= Θ(G)^2 + 2Θ(GH) + Θ(H)^2 >= L(G)^2 + 2L(GH) + L(H)^2,
    compared against (U(G) + U(H))^2. Slack is reported at the squared level.
    """
    if certificate.kind is not StrictnessKind.PRODUCT:
        raise ParameterError(f"Expected a {StrictnessKind.PRODUCT.value} certificate")
    lg, lh = Fraction(i_g.lower), Fraction(i_h.lower)
    ug, uh = Fraction(i_g.upper), Fraction(i_h.upper)
    lgh = Fraction(certificate.numbers["lower_gh"])
    lower_sq = lg * lg + 2 * lgh + lh * lh
    upper_sq = (ug + uh) ** 2
    slack = lower_sq - upper_sq
    if slack <= 0:
        raise DerivationFailedError(float_up(-slack))
    return StrictnessCertificate(
        StrictnessKind.SUM,
        {
            "lower_sum_squared": float_down(lower_sq),
            "upper_sum_squared": float_up(upper_sq),
            "lower_g": i_g.lower,
            "lower_h": i_h.lower,
            "lower_gh": certificate.numbers["lower_gh"],
            "upper_g": i_g.upper,
            "upper_h": i_h.upper,
            "lower_g_provenance": i_g.lower_provenance,
            "lower_h_provenance": i_h.lower_provenance,
            "lower_gh_provenance": certificate.numbers.get("lower_gh_provenance", {}),
        },
        float_down(slack),
    )


@dataclass(frozen=True)
class ConverseBound:
    i: int
    j: int
    assumed_bound: float
    n: int
    alpha_sum_power: Optional[int]
    assumed_sum_power_bound: float
    theta_sum_power_bound: float
    theta_check_passed: Optional[bool]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "i": self.i,
            "j": self.j,
            "assumed_bound": self.assumed_bound,
            "n": self.n,
            "alpha_sum_power": self.alpha_sum_power,
            "assumed_sum_power_bound": self.assumed_sum_power_bound,
            "theta_sum_power_bound": self.theta_sum_power_bound,
            "theta_check_passed": self.theta_check_passed,
        }


def theorem2_converse_bound(
    g: Graph,
    h: Graph,
    i: int,
    j: int,
    intervals: Tuple[CapacityInterval, CapacityInterval],
    n: int = 1,
    solver: Optional[AlphaSolver] = None,
    theta_g: Optional[ThetaResult] = None,
    theta_h: Optional[ThetaResult] = None,
    tol: float = DEFAULT_TOL,
    max_vertices: int = DEFAULT_MAX_VERTICES,
) -> ConverseBound:
    """
    Under the assumption Θ(GH) <= Θ(G)Θ(H), with Θ(G), Θ(H) taken as the
    interval upper ends: Θ(G^i H^j) <= Θ(G)^i Θ(H)^j and
    α((G+H)^n) <= (Θ(G) + Θ(H))^n. Independently of the assumption,
    α((G+H)^n) <= (ϑ(G) + ϑ(H))^n is checked exactly when (G+H)^n fits the budget.
    """
    if i < 0 or j < 0 or i + j < 1:
        raise ParameterError(f"Need i, j >= 0 with i + j >= 1, got i={i}, j={j}")
    if n < 1:
        raise ParameterError(f"n must be >= 1, got {n}")
    i_g, i_h = intervals
    ug, uh = Fraction(i_g.upper), Fraction(i_h.upper)
    assumed = float_up(ug**i * uh**j)
    assumed_sum = float_up((ug + uh) ** n)

    tg = theta_g or theta(g, tol)
    th = theta_h or theta(h, tol)
    theta_sum = float_up((Fraction(tg.upper_cert) + Fraction(th.upper_cert)) ** n)

    alpha_value: Optional[int] = None
    passed: Optional[bool] = None
    if (g.n + h.n) ** n <= max_vertices:
        solver = solver or AlphaSolver()
        try:
            alpha_value = solver.value(power(graph_sum(g, h), n))
            passed = alpha_value <= theta_sum
        except BudgetError:
            alpha_value = None
    return ConverseBound(i, j, assumed, n, alpha_value, assumed_sum, theta_sum, passed)


def shannon_sum_lower(g: Graph, h: Graph, t: int, solver: Optional[AlphaSolver] = None) -> float:
    """α(G^t)^(1/t) + α(H^t)^(1/t), a lower bound on Θ(G + H), rounded down."""
    if t < 1:
        raise ParameterError(f"t must be >= 1, got {t}")
    solver = solver or AlphaSolver()
    a = solver.value(power(g, t))
    b = solver.value(power(h, t))
    return float_down(Fraction(root_down(a, t)) + Fraction(root_down(b, t)))


def interval_contains(interval: CapacityInterval, value: float, tol: float = 0.0) -> bool:
    return interval.lower - tol <= value <= interval.upper + tol


def recheck_lower(interval: CapacityInterval, g: Graph, solver: Optional[AlphaSolver] = None) -> bool:
    """
    Re-derives the lower end of `interval` for g: the stored witness must be
    stable in G^k with α(G^k) members, a fresh exact solve (no cache) must
    return the same α, and its rounded root must land inside the interval.
    """
    provenance = interval.lower_provenance
    source = provenance.get("source")
    if source != "alpha":
        raise ParameterError(f"Lower end from '{source}' carries no α witness")
    k, value = provenance["k"], provenance["alpha"]
    witness = StableSetWitness(tuple(provenance["witness"]))
    gk = power(g, k)
    if len(witness) != value or not is_stable(gk, witness):
        return False
    solver = solver or AlphaSolver()
    fresh = alpha_components(gk, solver.max_nodes, solver.max_seconds)
    if fresh.value != value:
        return False
    root = root_down(fresh.value, k)
    return root == interval.lower and interval_contains(interval, root)


__all__ = [
    "CapacityInterval",
    "ConverseBound",
    "StrictnessCertificate",
    "StrictnessKind",
    "capacity_interval",
    "compare_product_strictness",
    "derive_sum_certificate",
    "intervals_for",
    "is_pure_product",
    "poly_capacity_lower",
    "poly_capacity_upper",
    "recheck_lower",
    "shannon_sum_lower",
    "strict_product_certificate",
    "theorem2_converse_bound",
    "interval_contains",
]
