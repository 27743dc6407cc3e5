"""
The verification suite: every check over the stock instances plus seeded random
pairs. All randomness comes from one numpy Generator seeded from the settings.
"""

from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np

from shannon.algebra.polynomial import parse_polynomial
from shannon.config import Settings
from shannon.emitter import _EmitterCallable, null_emit
from shannon.errors import BudgetError, ConvergenceError, NoLowerBoundError, SizeError
from shannon.graphs.generators import complete, cycle, empty, generate, random_graph, schlafli
from shannon.graphs.graph import Graph, empty_graph, unit_graph
from shannon.solvers.alpha import AlphaSolver
from shannon.verifier.checks import CheckResult, CheckStatus, Verifier

ROUTE_POLYNOMIALS = ("x^2 + 2 x y", "x y^2 + x^3", "x", "x^2 + 1")

# budget exhaustion inside one check makes that check inconclusive
_SOFT_ERRORS = (BudgetError, ConvergenceError, NoLowerBoundError, SizeError)


@dataclass
class VerificationReport:
    results: List[CheckResult]
    seed: int
    intervals: Dict[str, Any] = field(default_factory=dict)
    certificates: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def hard_failures(self) -> List[str]:
        return [r.check_id for r in self.results if r.hard_failure]

    @property
    def counts_by_status(self) -> Dict[str, int]:
        counts = Counter(r.status.value for r in self.results)
        return {status.value: counts.get(status.value, 0) for status in CheckStatus}

    @property
    def exit_code(self) -> int:
        return 1 if self.hard_failures else 0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "seed": self.seed,
            "results": [r.to_dict() for r in self.results],
            "hard_failures": self.hard_failures,
            "counts_by_status": self.counts_by_status,
            "intervals": self.intervals,
            "certificates": self.certificates,
        }


def _relabel(g: Graph, label: str) -> Graph:
    return Graph(g.n, g.rows, label)


def random_pairs(
    rng: np.random.Generator, count: int, max_vertices: int, p: float, family: str
) -> List[Tuple[Graph, Graph]]:
    """`count` pairs of random graphs on 1..max_vertices vertices, labelled by family and index."""
    pairs = []
    for i in range(count):
        pair = []
        for side in "ab":
            n = int(rng.integers(1, max_vertices + 1))
            pair.append(_relabel(random_graph(n, p, rng), f"{family}{i:03d}{side}"))
        pairs.append((pair[0], pair[1]))
    return pairs


class _Runner:
    """Collects results, turning budget exhaustion of a single check into an inconclusive record."""

    def __init__(self, emit: _EmitterCallable):
        self._emit = emit
        self.results: List[CheckResult] = []

    def run(self, check_id: str, fn: Callable[..., Any], *args, **kwargs):
        try:
            outcome = fn(*args, **kwargs)
        except _SOFT_ERRORS as e:
            self._emit(
                "warn_log",
                {
                    "message": f"{check_id}: {e}",
                    "location": "verifier/suite._Runner.run",
                    **e.details(),
                },
            )
            self.results.append(
                CheckResult.inconclusive(check_id, {}, details={"error": type(e).__name__, "message": str(e)})
            )
            return
        if isinstance(outcome, list):
            self.results.extend(outcome)
        else:
            self.results.append(outcome)


def run_suite(
    settings: Optional[Settings] = None,
    solver: Optional[AlphaSolver] = None,
    emit: _EmitterCallable = null_emit,
) -> VerificationReport:
    settings = settings or Settings()
    suite = settings.suite
    seed = settings.general.seed
    verifier = Verifier(settings, solver, emit)
    runner = _Runner(emit)
    rng = np.random.default_rng(seed)
    p_edge = suite.edge_probability

    stock = [generate(name) for name in suite.graphs]
    c5, c7, k1 = cycle(5), cycle(7), unit_graph()
    e2, e3 = empty(2), empty(3)

    emit(
        "info_log",
        {
            "message": f"Running suite on {len(stock)} stock graphs with seed {seed}",
            "location": "verifier/suite.run_suite",
        },
    )

    # α identities
    for g, h in combinations_with_replacement(stock, 2):
        runner.run(f"alpha_additivity[{g.label()},{h.label()}]", verifier.check_alpha_additivity, g, h)
        runner.run(f"alpha_supermult[{g.label()},{h.label()}]", verifier.check_alpha_supermult, g, h)
    runner.run("alpha_additivity[C5,E0]", verifier.check_alpha_additivity, c5, empty_graph(0))
    for g, h in random_pairs(rng, suite.additivity_pairs, suite.additivity_max_vertices, p_edge, "add"):
        runner.run(f"alpha_additivity[{g.label()},{h.label()}]", verifier.check_alpha_additivity, g, h)
    for g, h in random_pairs(rng, suite.supermult_pairs, suite.supermult_max_vertices, p_edge, "mul"):
        runner.run(f"alpha_supermult[{g.label()},{h.label()}]", verifier.check_alpha_supermult, g, h)

    expansion = [(c5, c5, 2), (c5, k1, 2), (k1, k1, 3)]
    for g, h in random_pairs(rng, suite.expansion_pairs, suite.expansion_max_vertices, p_edge, "exp"):
        expansion.extend((g, h, n) for n in suite.expansion_powers)
    for g, h, n in expansion:
        runner.run(
            f"sum_power_expansion[{g.label()},{h.label()},n={n}]", verifier.check_sum_power_expansion, g, h, n
        )

    for g, h in ((c5, c5), (c5, c7), (k1, k1)):
        for t in (1, 2):
            runner.run(
                f"theorem1_link[{g.label()},{h.label()},n=2,t={t}]", verifier.check_theorem1_link, g, h, 2, t
            )

    # capacity level
    for g, h in combinations_with_replacement(stock, 2):
        if g.n + h.n <= 12:
            runner.run(
                f"shannon_superadditivity[{g.label()},{h.label()}]", verifier.check_shannon_superadditivity, g, h
            )

    for g in stock:
        runner.run(f"sandwich[{g.label()}]", verifier.check_sandwich, g)
        runner.run(f"fekete[{g.label()}]", verifier.check_fekete, g)
        runner.run(f"diagonal_witness[{g.label()}]", verifier.check_diagonal_witness, g)
        for p in settings.capacity.rank_primes:
            runner.run(f"rank_sanity[{g.label()},p={p}]", verifier.check_rank_sanity, g, p)
    runner.run("diagonal_witness[schlafli]", verifier.check_diagonal_witness, schlafli())
    runner.run("rank_sanity[K7,p=2]", verifier.check_rank_sanity, complete(7), 2)

    runner.run("theta_multiplicativity[C5,C5]", verifier.check_theta_multiplicativity, c5, c5)
    for g, h in random_pairs(rng, suite.theta_pairs, suite.theta_max_vertices, p_edge, "tht"):
        runner.run(
            f"theta_multiplicativity[{g.label()},{h.label()}]", verifier.check_theta_multiplicativity, g, h
        )

    # strictness and class membership
    runner.run("theorem2[C5,C5]", verifier.check_theorem2, c5, c5)
    runner.run("theorem2[E2,E3]", verifier.check_theorem2, e2, e3)
    for n in suite.converse_powers:
        runner.run(f"converse_bound[C5,C5,n={n}]", verifier.check_converse_bound, c5, c5, n)
    runner.run("converse_bound[E2,E3,n=3]", verifier.check_converse_bound, e2, e3, 3)

    runner.run(
        "pclass_closure[x;y;E2,E3]",
        verifier.check_pclass_closure,
        parse_polynomial("x", 2),
        parse_polynomial("y", 2),
        [e2, e3],
    )
    runner.run(
        "pclass_closure[x^2;x;C5]",
        verifier.check_pclass_closure,
        parse_polynomial("x^2", 1),
        parse_polynomial("x", 1),
        [c5],
    )
    for text in ROUTE_POLYNOMIALS:
        runner.run(f"theorem3_route[{text}]", verifier.check_theorem3_route, parse_polynomial(text))

    runner.run("synthetic", verifier.synthetic_checks)
    if suite.self_test:
        runner.run("self_test[injected]", verifier.self_test)

    results = sorted(runner.results, key=lambda r: r.check_id)
    report = VerificationReport(
        results,
        seed,
        {key: interval.to_dict() for key, interval in sorted(verifier.intervals.items())},
        verifier.certificates,
    )
    emit(
        "info_log",
        {
            "message": f"Suite finished: {report.counts_by_status}",
            "hard_failures": report.hard_failures,
            "location": "verifier/suite.run_suite",
        },
    )
    return report
