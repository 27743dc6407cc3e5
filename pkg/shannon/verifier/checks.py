"""
Executable checks of the semiring identities and capacity inequalities on
concrete graphs. Every check returns CheckResult records carrying the inputs
(as graph6) and both sides of the relation, so each result can be re-derived.

Exact α comparisons use tolerance 0; comparisons involving ϑ use the
configured check tolerance.
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from shannon.algebra.polynomial import (
    Polynomial,
    divisor_exponent,
    evaluate,
    evaluate_at,
    expand_sum_power,
    format_polynomial,
    full_support_power,
    monomial_divides,
    multinomial_expand,
    vertex_count,
)
from shannon.algebra.rounding import float_down, float_up, kth_root_floor, root_up
from shannon.bounds.capacity import (
    CapacityInterval,
    StrictnessCertificate,
    capacity_interval,
    compare_product_strictness,
    derive_sum_certificate,
    poly_capacity_upper,
    recheck_lower,
    shannon_sum_lower,
    strict_product_certificate,
    theorem2_converse_bound,
)
from shannon.config import Settings
from shannon.emitter import _EmitterCallable, null_emit
from shannon.errors import (
    DerivationFailedError,
    FittingViolationError,
    ParameterError,
    SizeError,
)
from shannon.graphs.graph import (
    Graph,
    complement,
    diagonal_witness,
    graph_sum,
    is_stable,
    power,
    strong_product,
)
from shannon.graphs.graph6 import emit_graph6
from shannon.solvers.alpha import AlphaSolver, fekete_profile, product_witness
from shannon.solvers.rank import rank_bound
from shannon.solvers.theta import ThetaResult, theta, theta_product_check


class CheckStatus(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    INCONCLUSIVE = "inconclusive"


def evaluate_relation(lhs, rhs, relation: str, tol: float = 0.0) -> bool:
    """lhs `relation` rhs, with `tol` slack on the non-strict relations."""
    if relation == "==":
        return abs(lhs - rhs) <= tol
    if relation == ">=":
        return lhs >= rhs - tol
    if relation == "<=":
        return lhs <= rhs + tol
    if relation == ">":
        return lhs > rhs
    raise ParameterError(f"Unknown relation '{relation}'")


@dataclass(frozen=True)
class CheckResult:
    check_id: str
    inputs: Dict[str, Any]
    lhs: Any
    rhs: Any
    relation: str
    passed: bool
    status: CheckStatus
    tol: float = 0.0
    details: Dict[str, Any] = field(default_factory=dict)

    @classmethod
    def compare(
        cls,
        check_id: str,
        inputs: Dict[str, Any],
        lhs,
        rhs,
        relation: str,
        tol: float = 0.0,
        details: Optional[Dict[str, Any]] = None,
    ) -> "CheckResult":
        passed = evaluate_relation(lhs, rhs, relation, tol)
        status = CheckStatus.PASS if passed else CheckStatus.FAIL
        return cls(check_id, inputs, lhs, rhs, relation, passed, status, tol, details or {})

    @classmethod
    def inconclusive(
        cls,
        check_id: str,
        inputs: Dict[str, Any],
        lhs=None,
        rhs=None,
        relation: str = "==",
        tol: float = 0.0,
        details: Optional[Dict[str, Any]] = None,
    ) -> "CheckResult":
        return cls(
            check_id, inputs, lhs, rhs, relation, True, CheckStatus.INCONCLUSIVE, tol, details or {}
        )

    @property
    def hard_failure(self) -> bool:
        return self.status is CheckStatus.FAIL

    def to_dict(self) -> Dict[str, Any]:
        return {
            "check_id": self.check_id,
            "inputs": self.inputs,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "relation": self.relation,
            "pass": self.passed,
            "status": self.status.value,
            "tol": self.tol,
            "details": self.details,
        }


def graph_inputs(**graphs: Graph) -> Dict[str, Any]:
    return {name: {"label": g.label(), "graph6": emit_graph6(g)} for name, g in graphs.items()}


def _pair_id(name: str, g: Graph, h: Graph, *extra) -> str:
    parts = [g.label(), h.label()] + [str(e) for e in extra]
    return f"{name}[{','.join(parts)}]"


class Verdict(str, Enum):
    IN = "in-P"
    NOT_IN = "not-in-P"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class PClassCertificate:
    """Evidence about Θ(p(G)) = p(Θ(G1), ..., Θ(Gn)) for one polynomial and tuple."""

    polynomial: str
    graphs: Tuple[str, ...]
    intervals: Tuple[CapacityInterval, ...]
    lower: float
    upper: Optional[float]
    p_at_lower: float
    p_at_upper: Optional[float]
    verdict: Verdict
    tol: float

    def to_dict(self) -> Dict[str, Any]:
        return {
            "polynomial": self.polynomial,
            "graphs": list(self.graphs),
            "intervals": [i.to_dict() for i in self.intervals],
            "theta_p_lower": self.lower,
            "theta_p_upper": self.upper,
            "p_at_lower": self.p_at_lower,
            "p_at_upper": self.p_at_upper,
            "verdict": self.verdict.value,
            "tol": self.tol,
        }


def _close(lo: float, hi: float, tol: float) -> bool:
    return hi - lo <= tol * max(1.0, abs(hi))


def implication_status(premise: Verdict, conclusion: Verdict) -> CheckStatus:
    """premise in 𝒫 => conclusion in 𝒫, judged on certified verdicts only."""
    if premise is Verdict.IN and conclusion is Verdict.NOT_IN:
        return CheckStatus.FAIL
    if premise is Verdict.IN and conclusion is Verdict.IN:
        return CheckStatus.PASS
    if premise is Verdict.NOT_IN:
        return CheckStatus.PASS
    return CheckStatus.INCONCLUSIVE


class Verifier:
    """
    Runs the individual checks. Capacity intervals and ϑ solves are memoised by
    graph6 for the lifetime of the verifier; every interval and certificate it
    produces is kept for the report.
    """

    def __init__(
        self,
        settings: Optional[Settings] = None,
        solver: Optional[AlphaSolver] = None,
        emit: _EmitterCallable = null_emit,
    ):
        self.settings = settings or Settings()
        budgets = self.settings.budgets
        self.solver = solver or AlphaSolver(budgets.alpha_nodes, budgets.alpha_seconds)
        self._emit = emit
        self._thetas: Dict[str, ThetaResult] = {}
        self.intervals: Dict[str, CapacityInterval] = {}
        self.certificates: List[Dict[str, Any]] = []

    # Shared helpers -------------------------------------------------------
    @property
    def _cap(self):
        return self.settings.capacity

    @property
    def _budgets(self):
        return self.settings.budgets

    def _alpha(self, g: Graph, split: bool = True) -> int:
        return self.solver.value(g, split)

    def _theta(self, g: Graph) -> ThetaResult:
        key = emit_graph6(g)
        if key not in self._thetas:
            self._thetas[key] = theta(
                g, self._cap.tol, self._budgets.theta_max_vertices, self._budgets.theta_max_iters
            )
        return self._thetas[key]

    def interval(self, g: Graph, kmax: Optional[int] = None) -> CapacityInterval:
        kmax = kmax or self._cap.kmax
        key = f"{kmax}:{emit_graph6(g)}"
        if key not in self.intervals:
            self.intervals[key] = capacity_interval(
                g,
                kmax,
                self._cap.tol,
                self.solver,
                max_vertices=self._budgets.max_vertices,
                theta_max_vertices=self._budgets.theta_max_vertices,
                rank_primes=self._cap.rank_primes,
            )
            self._emit(
                "debug_log",
                {
                    "message": f"capacity interval for {g.label()}: {self.intervals[key].lower} .. {self.intervals[key].upper}",
                    "location": "verifier/checks.Verifier.interval",
                },
            )
        return self.intervals[key]

    def _require_size(self, vertices: int):
        if vertices > self._budgets.max_vertices:
            raise SizeError(vertices, self._budgets.max_vertices)

    # α identities ---------------------------------------------------------
    def check_alpha_additivity(self, g: Graph, h: Graph) -> CheckResult:
        """α(G + H) = α(G) + α(H), the sum solved without component splitting."""
        lhs = self._alpha(graph_sum(g, h), split=False)
        a_g = self._alpha(g, split=False)
        a_h = self._alpha(h, split=False)
        return CheckResult.compare(
            _pair_id("alpha_additivity", g, h),
            graph_inputs(G=g, H=h),
            lhs,
            a_g + a_h,
            "==",
            details={"alpha_g": a_g, "alpha_h": a_h},
        )

    def check_alpha_supermult(self, g: Graph, h: Graph) -> CheckResult:
        """α(GH) >= α(G)α(H); the product of witnesses must be stable in GH."""
        self._require_size(g.n * h.n)
        gh = strong_product(g, h)
        r_g, r_h = self.solver.solve(g), self.solver.solve(h)
        lhs = self._alpha(gh)
        rhs = r_g.value * r_h.value
        witness = product_witness(r_g.witness, r_h.witness, g, h)
        stable = is_stable(gh, witness)
        result = CheckResult.compare(
            _pair_id("alpha_supermult", g, h),
            graph_inputs(G=g, H=h),
            lhs,
            rhs,
            ">=",
            details={"strict": lhs > rhs, "product_witness_stable": stable, "product_witness_size": len(witness)},
        )
        if not stable:
            return CheckResult(
                result.check_id, result.inputs, lhs, rhs, ">=", False, CheckStatus.FAIL, 0.0, result.details
            )
        return result

    def check_sum_power_expansion(self, g: Graph, h: Graph, n: int) -> CheckResult:
        """α((G + H)^n) = α(sum_k C(n, k) G^k H^(n-k))."""
        self._require_size((g.n + h.n) ** n)
        lhs = self._alpha(power(graph_sum(g, h), n))
        rhs = self._alpha(expand_sum_power(g, h, n, self._budgets.max_vertices))
        return CheckResult.compare(
            _pair_id("sum_power_expansion", g, h, f"n={n}"),
            {**graph_inputs(G=g, H=h), "n": n},
            lhs,
            rhs,
            "==",
        )

    def check_theorem1_link(self, g: Graph, h: Graph, n: int, t: int) -> CheckResult:
        """
        Every link of
          α((G+H)^n) = α(sum C(n,k) G^k H^(n-k)) = sum C(n,k) α(G^k H^(n-k))
            >= sum C(n,k) α(G^k) α(H^(n-k))
            >= sum C(n,k) α(G^t)^floor(k/t) α(H^t)^floor((n-k)/t)
            >= (α(G^t)^(1/t) + α(H^t)^(1/t))^n / (α(G^t) α(H^t)).
        The last right-hand side is evaluated with upward-rounded roots for the
        link and downward-rounded roots for the recorded end-to-end bound.
        """
        if n < 1 or not 1 <= t <= n:
            raise ParameterError(f"Need n >= 1 and 1 <= t <= n, got n={n}, t={t}")
        self._require_size((g.n + h.n) ** n)
        a = self._alpha(power(g, t))
        b = self._alpha(power(h, t))
        if a == 0 or b == 0:
            raise ParameterError("The sum-power chain needs graphs with at least one vertex")

        v0 = self._alpha(power(graph_sum(g, h), n))
        v1 = self._alpha(expand_sum_power(g, h, n, self._budgets.max_vertices))
        ks = range(n + 1)
        v2 = sum(math.comb(n, k) * self._alpha(strong_product(power(g, k), power(h, n - k))) for k in ks)
        v3 = sum(math.comb(n, k) * self._alpha(power(g, k)) * self._alpha(power(h, n - k)) for k in ks)
        v4 = sum(math.comb(n, k) * a ** (k // t) * b ** ((n - k) // t) for k in ks)
        ab = Fraction(a * b)
        v5_up = (Fraction(root_up(a, t)) + Fraction(root_up(b, t))) ** n / ab
        v5_down = (kth_root_floor(a, t) + kth_root_floor(b, t)) ** n / ab

        links = [
            {"link": "sum_expansion", "lhs": v0, "rhs": v1, "relation": "==", "pass": v0 == v1},
            {"link": "componentwise_alpha", "lhs": v1, "rhs": v2, "relation": "==", "pass": v1 == v2},
            {"link": "product_bound", "lhs": v2, "rhs": v3, "relation": ">=", "pass": v2 >= v3},
            {"link": "floor_power_bound", "lhs": v3, "rhs": v4, "relation": ">=", "pass": v3 >= v4},
            {
                "link": "real_root_bound",
                "lhs": v4,
                "rhs": float_up(v5_up),
                "relation": ">=",
                "pass": v4 >= v5_up,
            },
        ]
        rhs = float_down(v5_down)
        passed = all(link["pass"] for link in links) and v0 >= v5_down
        return CheckResult(
            _pair_id("theorem1_link", g, h, f"n={n}", f"t={t}"),
            {**graph_inputs(G=g, H=h), "n": n, "t": t},
            v0,
            rhs,
            ">=",
            passed,
            CheckStatus.PASS if passed else CheckStatus.FAIL,
            0.0,
            {"alpha_g_t": a, "alpha_h_t": b, "chain": links},
        )

    # Capacity-level checks ------------------------------------------------
    def check_shannon_superadditivity(self, g: Graph, h: Graph, kmax: Optional[int] = None) -> CheckResult:
        """upper(G + H) >= lower(G) + lower(H); also against α(G^t)^(1/t) + α(H^t)^(1/t)."""
        i_sum = self.interval(graph_sum(g, h), kmax)
        i_g, i_h = self.interval(g, kmax), self.interval(h, kmax)
        rhs = float_down(Fraction(i_g.lower) + Fraction(i_h.lower))
        t = kmax or self._cap.kmax
        details: Dict[str, Any] = {"lower_sum": i_sum.lower}
        if max(g.n, h.n) ** t <= self._budgets.max_vertices:
            details["shannon_sum_lower"] = shannon_sum_lower(g, h, t, self.solver)
            details["t"] = t
        result = CheckResult.compare(
            _pair_id("shannon_superadditivity", g, h),
            graph_inputs(G=g, H=h),
            i_sum.upper,
            rhs,
            ">=",
            self._cap.check_tol,
            details,
        )
        extra = details.get("shannon_sum_lower")
        if extra is not None and not evaluate_relation(i_sum.upper, extra, ">=", self._cap.check_tol):
            return CheckResult(
                result.check_id, result.inputs, result.lhs, rhs, ">=", False, CheckStatus.FAIL, result.tol, details
            )
        return result

    def pclass_certificate(self, p: Polynomial, graphs: Sequence[Graph]) -> PClassCertificate:
        """
        Θ(p(G)) lies in [lower, upper]: lower is the larger of p at the interval
        lower ends and, when p(G) is small enough, α(p(G)); upper is p at the ϑ
        upper ends. p(Θ) lies in [p_at_lower, p_at_upper].
        """
        if len(graphs) != p.nvars:
            raise ParameterError(f"Polynomial has {p.nvars} variables but {len(graphs)} graphs were given")
        if any(g.n == 0 for g in graphs):
            raise ParameterError("Class membership is only defined for graphs with at least one vertex")
        intervals = tuple(self.interval(g) for g in graphs)
        tol = self._cap.check_tol
        p_low = evaluate_at(p, [i.lower for i in intervals], "down")
        lower = p_low
        size = vertex_count(p, [g.n for g in graphs])
        if not p.is_zero and size <= self.settings.suite.pclass_direct_vertices:
            lower = max(lower, float(self._alpha(evaluate(p, graphs, self._budgets.max_vertices))))

        p_up: Optional[float]
        try:
            p_up = poly_capacity_upper(
                p,
                graphs,
                self._cap.tol,
                self._cap.products_only_upper,
                intervals,
                self._budgets.theta_max_vertices,
            )
        except ParameterError:
            # products-only mode refuses sums; no certified upper end
            p_up = None
        upper = p_up

        # variables that do not occur in p cannot affect its membership
        used = set().union(*(mono.support() for mono in p.monomials()))
        collapsed = all(intervals[i].collapsed(tol) for i in used)
        if p_up is not None and collapsed and _close(p_low, upper, tol):
            verdict = Verdict.IN
        elif p_up is not None and lower > p_up + tol * max(1.0, abs(p_up)):
            verdict = Verdict.NOT_IN
        else:
            verdict = Verdict.INCONCLUSIVE
        return PClassCertificate(
            format_polynomial(p),
            tuple(g.label() for g in graphs),
            intervals,
            lower,
            upper,
            p_low,
            p_up,
            verdict,
            tol,
        )

    def _membership_result(self, name: str, cert: PClassCertificate, inputs: Dict[str, Any]) -> CheckResult:
        check_id = f"pclass[{cert.polynomial};{','.join(cert.graphs)}]:{name}"
        details = {"verdict": cert.verdict.value, "certificate": cert.to_dict()}
        if cert.upper is None:
            return CheckResult.inconclusive(check_id, inputs, cert.upper, cert.p_at_lower, ">=", cert.tol, details)
        # Θ(p(G)) >= p(Θ(G)) must hold between the certified ends
        return CheckResult.compare(check_id, inputs, cert.upper, cert.p_at_lower, ">=", cert.tol, details)

    def check_pclass_closure(
        self, p: Polynomial, q: Polynomial, graphs: Sequence[Graph], k: Optional[int] = None
    ) -> List[CheckResult]:
        """
        Verdicts for p, q, p + q, pq and p^k, then the closure rules
        p + q ∈ 𝒫 => p, q ∈ 𝒫;  pq ∈ 𝒫 with q != 0 => p ∈ 𝒫;  p ∈ 𝒫 => p^k ∈ 𝒫.
        """
        k = k or self.settings.suite.pclass_power
        if q.is_zero:
            raise ParameterError("The product rule needs q != 0")
        if k < 1:
            raise ParameterError(f"k must be >= 1, got {k}")
        inputs = {
            **graph_inputs(**{f"G{i + 1}": g for i, g in enumerate(graphs)}),
            "p": format_polynomial(p),
            "q": format_polynomial(q),
            "k": k,
        }
        polys = {"p": p, "q": q, "p+q": p + q, "pq": p * q, f"p^{k}": p**k}
        certs = {name: self.pclass_certificate(poly, graphs) for name, poly in polys.items()}
        for cert in certs.values():
            self.certificates.append({"kind": "pclass", **cert.to_dict()})

        results = [self._membership_result(name, cert, inputs) for name, cert in certs.items()]
        base = f"pclass_closure[{format_polynomial(p)};{format_polynomial(q)};{','.join(g.label() for g in graphs)}]"
        rules = [
            ("sum_left", "p+q", "p"),
            ("sum_right", "p+q", "q"),
            ("product", "pq", "p"),
            ("power", "p", f"p^{k}"),
        ]
        for rule, premise, conclusion in rules:
            v_premise, v_conclusion = certs[premise].verdict, certs[conclusion].verdict
            status = implication_status(v_premise, v_conclusion)
            results.append(
                CheckResult(
                    f"{base}:{rule}",
                    inputs,
                    v_premise.value,
                    v_conclusion.value,
                    "implies",
                    status is not CheckStatus.FAIL,
                    status,
                    self._cap.check_tol,
                    {"premise": premise, "conclusion": conclusion},
                )
            )
        return results

    def check_theta_multiplicativity(self, g: Graph, h: Graph) -> CheckResult:
        """|ϑ(GH) - ϑ(G)ϑ(H)| within the check tolerance plus the solver gaps."""
        report = theta_product_check(
            g, h, self._cap.tol, self._cap.theta_check_tol, self._budgets.theta_max_vertices
        )
        return CheckResult(
            _pair_id("theta_multiplicativity", g, h),
            graph_inputs(G=g, H=h),
            report.theta_gh.value,
            report.theta_g.value * report.theta_h.value,
            "==",
            report.passed,
            CheckStatus.PASS if report.passed else CheckStatus.FAIL,
            report.allowed,
            {"difference": report.difference},
        )

    def check_sandwich(self, g: Graph) -> CheckResult:
        """α(G) <= ϑ(G) against the rounded-up certificate."""
        a = self._alpha(g)
        if g.n == 0:
            return CheckResult.compare(f"sandwich[{g.label()}]", graph_inputs(G=g), 0, 0.0, "<=")
        t = self._theta(g)
        return CheckResult.compare(
            f"sandwich[{g.label()}]",
            graph_inputs(G=g),
            a,
            t.upper_cert,
            "<=",
            details={"theta": t.to_dict()},
        )

    def check_diagonal_witness(self, g: Graph) -> CheckResult:
        """The diagonal of G * complement(G) is stable, so α(G Ḡ) >= |V(G)|."""
        witness = diagonal_witness(g)
        stable = is_stable(strong_product(g, complement(g)), witness)
        lhs = len(witness) if stable else 0
        return CheckResult.compare(
            f"diagonal_witness[{g.label()}]",
            graph_inputs(G=g),
            lhs,
            g.n,
            ">=",
            details={"stable": stable, "witness_size": len(witness)},
        )

    def check_rank_sanity(self, g: Graph, p: int = 2) -> CheckResult:
        """
        rank(A + I) over GF(p) >= α(G), and a matrix with a nonzero entry at a
        nonadjacent pair is rejected.
        """
        a = self._alpha(g)
        b = (g.adjacency_matrix().astype(np.int64) + np.eye(g.n, dtype=np.int64)) % p
        rank = rank_bound(g, b, p)
        rejected: Optional[bool] = None
        pair = next(((u, v) for u in range(g.n) for v in range(u + 1, g.n) if not g.adjacent(u, v)), None)
        if pair is not None:
            bad = b.copy()
            bad[pair] = 1
            try:
                rank_bound(g, bad, p)
                rejected = False
            except FittingViolationError as e:
                rejected = tuple(e.entry) == pair
        result = CheckResult.compare(
            f"rank_sanity[{g.label()},p={p}]",
            {**graph_inputs(G=g), "p": p},
            rank,
            a,
            ">=",
            details={"fitting_violation_rejected": rejected},
        )
        if rejected is False:
            return CheckResult(
                result.check_id, result.inputs, rank, a, ">=", False, CheckStatus.FAIL, 0.0, result.details
            )
        return result

    def check_fekete(self, g: Graph, kmax: Optional[int] = None) -> CheckResult:
        """α(G^(s+t)) >= α(G^s) α(G^t) on every computed pair; counts violations."""
        kmax = kmax or self._cap.kmax
        profile = fekete_profile(g, kmax, self.solver, self._budgets.max_vertices)
        check_id = f"fekete[{g.label()},kmax={kmax}]"
        details = profile.to_dict()
        if len(profile.steps) < 2:
            return CheckResult.inconclusive(check_id, {**graph_inputs(G=g), "kmax": kmax}, details=details)
        return CheckResult.compare(
            check_id, {**graph_inputs(G=g), "kmax": kmax}, len(profile.violations), 0, "==", details=details
        )

    # Strictness and class checks -------------------------------------------
    def check_theorem2(self, g: Graph, h: Graph) -> CheckResult:
        """
        Product-strict certificate search and, when found, the derived sum-strict
        certificate. No certificate is inconclusive, never a failure.
        """
        cert, (i_g, i_h, i_gh) = strict_product_certificate(
            g,
            h,
            self._cap.kmax,
            self._cap.tol,
            self.solver,
            product_kmax=1,
            max_vertices=self._budgets.max_vertices,
            theta_max_vertices=self._budgets.theta_max_vertices,
        )
        check_id = _pair_id("theorem2", g, h)
        inputs = graph_inputs(G=g, H=h)
        bound = float_up(Fraction(i_g.upper) * Fraction(i_h.upper))
        details: Dict[str, Any] = {"intervals": [i_g.to_dict(), i_h.to_dict(), i_gh.to_dict()]}
        if cert is None:
            return CheckResult.inconclusive(check_id, inputs, i_gh.lower, bound, ">", details=details)
        self.certificates.append(cert.to_dict())
        details["product_certificate"] = cert.to_dict()
        details["lower_gh_reproduced"] = recheck_lower(i_gh, strong_product(g, h), self.solver)
        if not details["lower_gh_reproduced"]:
            return CheckResult(check_id, inputs, i_gh.lower, bound, ">", False, CheckStatus.FAIL, 0.0, details)
        try:
            sum_cert = derive_sum_certificate(cert, i_g, i_h)
        except DerivationFailedError as e:
            details["derivation_deficit"] = e.deficit
            return CheckResult.inconclusive(check_id, inputs, i_gh.lower, bound, ">", details=details)
        self.certificates.append(sum_cert.to_dict())
        details["sum_certificate"] = sum_cert.to_dict()
        return CheckResult.compare(check_id, inputs, i_gh.lower, bound, ">", details=details)

    def check_converse_bound(self, g: Graph, h: Graph, n: int, i: int = 1, j: int = 1) -> CheckResult:
        """α((G+H)^n) <= (ϑ(G) + ϑ(H))^n, plus the assumed-hypothesis bounds for the record."""
        bound = theorem2_converse_bound(
            g,
            h,
            i,
            j,
            (self.interval(g), self.interval(h)),
            n,
            self.solver,
            self._theta(g),
            self._theta(h),
            self._cap.tol,
            self._budgets.max_vertices,
        )
        check_id = _pair_id("converse_bound", g, h, f"n={n}")
        inputs = {**graph_inputs(G=g, H=h), "n": n, "i": i, "j": j}
        if bound.alpha_sum_power is None:
            return CheckResult.inconclusive(
                check_id, inputs, None, bound.theta_sum_power_bound, "<=", details=bound.to_dict()
            )
        return CheckResult.compare(
            check_id, inputs, bound.alpha_sum_power, bound.theta_sum_power_bound, "<=", details=bound.to_dict()
        )

    def check_theorem3_route(self, p: Polynomial) -> CheckResult:
        """
        Some term q of p^k holds every variable, and every monomial μ of p
        divides a power q^N; the multinomial coefficients of (q1+...+qt)^k sum to t^k.
        """
        text = format_polynomial(p)
        check_id = f"theorem3_route[{text}]"
        inputs = {"p": text, "nvars": p.nvars}
        try:
            k, q = full_support_power(p)
        except ParameterError as e:
            return CheckResult.inconclusive(check_id, inputs, details={"reason": str(e)})
        qs = p.monomials()
        coefficient_sum = sum(c for _, c in multinomial_expand(qs, k))
        exponents: List[Dict[str, Any]] = []
        dividing = 0
        for mu in qs:
            n_mu = divisor_exponent(mu, q)
            ok = n_mu is not None and monomial_divides(mu, q, n_mu)
            dividing += ok
            exponents.append({"monomial": list(mu.exponents), "N": n_mu, "divides": ok})
        result = CheckResult.compare(
            check_id,
            inputs,
            dividing,
            len(qs),
            "==",
            details={
                "k": k,
                "q": list(q.exponents),
                "divisors": exponents,
                "multinomial_sum": coefficient_sum,
                "expected_sum": len(qs) ** k,
            },
        )
        if coefficient_sum != len(qs) ** k:
            return CheckResult(check_id, inputs, dividing, len(qs), "==", False, CheckStatus.FAIL, 0.0, result.details)
        return result

    # Harness self-tests -------------------------------------------------------
    def synthetic_checks(self) -> List[CheckResult]:
        """Strictness comparisons on injected intervals with known answers."""
        results = []
        i_g = CapacityInterval.synthetic(2.0, 2.0)
        i_h = CapacityInterval.synthetic(3.5, 3.5)
        cert = compare_product_strictness(i_g, i_h, CapacityInterval.synthetic(7.1, 7.1))
        results.append(
            CheckResult.compare(
                "synthetic[product_strictness]",
                {"upper_g": 2.0, "upper_h": 3.5, "lower_gh": 7.1},
                cert.slack if cert else 0.0,
                0.1,
                "==",
                1e-9,
            )
        )
        two = CapacityInterval.synthetic(2.0, 2.0)
        product = compare_product_strictness(two, two, CapacityInterval.synthetic(5.0, 5.0))
        sum_cert: Optional[StrictnessCertificate] = (
            derive_sum_certificate(product, two, two) if product else None
        )
        results.append(
            CheckResult.compare(
                "synthetic[sum_derivation]",
                {"lower_g": 2.0, "lower_h": 2.0, "upper_g": 2.0, "upper_h": 2.0, "lower_gh": 5.0},
                sum_cert.slack if sum_cert else 0.0,
                2.0,
                "==",
            )
        )
        equal = compare_product_strictness(two, two, CapacityInterval.synthetic(4.0, 4.0))
        results.append(
            CheckResult.compare(
                "synthetic[no_certificate_at_equality]",
                {"upper_g": 2.0, "upper_h": 2.0, "lower_gh": 4.0},
                int(equal is None),
                1,
                "==",
            )
        )
        return results

    def self_test(self) -> CheckResult:
        """An injected false equality; the harness must flag it."""
        return CheckResult.compare("self_test[injected]", {"lhs": 1, "rhs": 2}, 1, 2, "==")


__all__ = [
    "CheckResult",
    "CheckStatus",
    "PClassCertificate",
    "Verdict",
    "Verifier",
    "evaluate_relation",
    "graph_inputs",
    "implication_status",
]
