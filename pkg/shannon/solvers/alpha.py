"""
Exact stable set number by branch and bound on bitset adjacency.

Each node branches on the residual vertex of maximum degree (lowest index on
ties), including it first. A node is pruned when the chosen set plus a greedy
clique cover of the residual candidates cannot beat the incumbent.
"""

import time
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

from shannon.algebra.rounding import root_down
from shannon.cache import AlphaCache, cache_key
from shannon.emitter import _EmitterCallable, null_emit
from shannon.errors import BudgetError, CacheCoherenceError, ParameterError
from shannon.graphs.graph import (
    Graph,
    StableSetWitness,
    components,
    is_stable,
    iter_bits,
    power,
)
from shannon.graphs.graph6 import emit_graph6

DEFAULT_MAX_NODES = 100_000_000
DEFAULT_MAX_SECONDS = 300.0
_CLOCK_EVERY = 1024


@dataclass(frozen=True)
class AlphaResult:
    value: int
    witness: StableSetWitness
    stats: Dict[str, Any] = field(default_factory=dict, compare=False)

    def to_dict(self) -> Dict[str, Any]:
        return {"value": self.value, "witness": list(self.witness.vertices), "stats": self.stats}


class _Budget:
    def __init__(self, max_nodes: int, max_seconds: float):
        self.max_nodes = max_nodes
        self.max_seconds = max_seconds
        self.start = time.monotonic()
        self.nodes = 0

    def elapsed(self) -> float:
        return time.monotonic() - self.start

    def tick(self, best: int):
        self.nodes += 1
        if self.nodes > self.max_nodes:
            raise BudgetError(
                f"Node budget of {self.max_nodes} exceeded",
                self.nodes,
                self.elapsed(),
                tuple(iter_bits(best)),
            )
        if self.nodes % _CLOCK_EVERY == 0 and self.elapsed() > self.max_seconds:
            raise BudgetError(
                f"Time budget of {self.max_seconds}s exceeded",
                self.nodes,
                self.elapsed(),
                tuple(iter_bits(best)),
            )


def _clique_cover_size(rows: Sequence[int], cand: int) -> int:
    """Greedy sequential clique cover of the candidates; bounds α from above."""
    count = 0
    rest = cand
    while rest:
        low = rest & -rest
        clique = low
        common = rows[low.bit_length() - 1] & rest
        while common:
            pick = common & -common
            clique |= pick
            common &= rows[pick.bit_length() - 1]
        rest &= ~clique
        count += 1
    return count


def _greedy_stable(rows: Sequence[int], cand: int) -> int:
    """Minimum residual degree greedy, for an initial incumbent."""
    chosen = 0
    while cand:
        best_v, best_deg = -1, None
        for v in iter_bits(cand):
            deg = (rows[v] & cand).bit_count()
            if best_deg is None or deg < best_deg:
                best_v, best_deg = v, deg
        chosen |= 1 << best_v
        cand &= ~(rows[best_v] | (1 << best_v))
    return chosen


def _branch_and_bound(rows: Sequence[int], mask: int, budget: _Budget) -> int:
    """Maximum stable subset of `mask`, returned as a bitmask."""
    best = _greedy_stable(rows, mask)
    best_size = best.bit_count()
    stack = [(mask, 0)]
    while stack:
        cand, chosen = stack.pop()
        budget.tick(best)
        size = chosen.bit_count()
        if size + cand.bit_count() <= best_size:
            continue
        if size + _clique_cover_size(rows, cand) <= best_size:
            continue

        pivot, pivot_deg = -1, -1
        for v in iter_bits(cand):
            deg = (rows[v] & cand).bit_count()
            if deg > pivot_deg:
                pivot, pivot_deg = v, deg
        if pivot_deg <= 0:
            # the residual is empty or edgeless: take all of it
            best, best_size = chosen | cand, size + cand.bit_count()
            continue

        bit = 1 << pivot
        stack.append((cand & ~bit, chosen))
        stack.append((cand & ~bit & ~rows[pivot], chosen | bit))
    return best


def alpha(
    g: Graph,
    max_nodes: int = DEFAULT_MAX_NODES,
    max_seconds: float = DEFAULT_MAX_SECONDS,
) -> AlphaResult:
    """Exact α(g) with a maximum stable set as witness."""
    budget = _Budget(max_nodes, max_seconds)
    best = _branch_and_bound(g.rows, g.vertex_mask, budget) if g.n else 0
    witness = StableSetWitness.from_mask(best)
    return AlphaResult(
        len(witness),
        witness,
        {"nodes": budget.nodes, "elapsed": budget.elapsed(), "components": 1},
    )


def alpha_components(
    g: Graph,
    max_nodes: int = DEFAULT_MAX_NODES,
    max_seconds: float = DEFAULT_MAX_SECONDS,
) -> AlphaResult:
    """α(g) as the sum over connected components (α(G + H) = α(G) + α(H))."""
    budget = _Budget(max_nodes, max_seconds)
    parts = components(g)
    best = 0
    for component in parts:
        try:
            best |= _branch_and_bound(g.rows, component, budget)
        except BudgetError as e:
            raise BudgetError(
                str(e), e.nodes, e.elapsed, tuple(iter_bits(best)) + e.best
            ) from e
    witness = StableSetWitness.from_mask(best)
    return AlphaResult(
        len(witness),
        witness,
        {"nodes": budget.nodes, "elapsed": budget.elapsed(), "components": len(parts)},
    )


def product_witness(
    w_g: StableSetWitness, w_h: StableSetWitness, g: Graph, h: Graph
) -> StableSetWitness:
    """The cartesian product of stable sets, flattened as u*|h| + v."""
    if not is_stable(g, w_g):
        raise ParameterError("First witness is not stable in its graph")
    if not is_stable(h, w_h):
        raise ParameterError("Second witness is not stable in its graph")
    return StableSetWitness(tuple(u * h.n + v for u in w_g for v in w_h))


def _witness_problem(g: Graph, witness: StableSetWitness, value: int) -> Optional[str]:
    if len(witness) != value:
        return f"Cached witness has {len(witness)} vertices for alpha {value}"
    if any(not 0 <= v < g.n for v in witness):
        return f"Cached witness leaves the {g.n} vertices of the graph"
    if not is_stable(g, witness):
        return "Cached witness is not a stable set"
    return None


class AlphaSolver:
    """Budgets, component splitting and the memo cache in front of `alpha`."""

    def __init__(
        self,
        max_nodes: int = DEFAULT_MAX_NODES,
        max_seconds: float = DEFAULT_MAX_SECONDS,
        cache: Optional[AlphaCache] = None,
        emit: _EmitterCallable = null_emit,
        verify_cache: bool = False,
    ):
        self.max_nodes = max_nodes
        self.max_seconds = max_seconds
        self.cache = cache
        self._emit = emit
        self.verify_cache = verify_cache

    def _fresh(self, g: Graph, split: bool) -> AlphaResult:
        solve = alpha_components if split else alpha
        result = solve(g, self.max_nodes, self.max_seconds)
        self._emit(
            "debug_log",
            {
                "message": f"alpha({g.label()}) = {result.value} on {g.n} vertices",
                "nodes": result.stats["nodes"],
                "elapsed": result.stats["elapsed"],
                "location": "solvers/alpha.AlphaSolver._fresh",
            },
        )
        return result

    def solve(self, g: Graph, split: bool = True) -> AlphaResult:
        if self.cache is None:
            return self._fresh(g, split)

        key = cache_key(emit_graph6(g), "alpha")
        payload = self.cache.get(key)
        if payload is not None:
            witness = StableSetWitness(tuple(payload["witness"]))
            cached = AlphaResult(
                payload["value"], witness, {**payload.get("stats", {}), "cached": True}
            )
            if not self.verify_cache:
                return cached
            fresh = self._fresh(g, split)
            reason = _witness_problem(g, witness, cached.value)
            matched = fresh.value == cached.value and reason is None
            self.cache.record_verification(matched)
            if not matched:
                raise CacheCoherenceError(key, cached.value, fresh.value, reason)
            return fresh

        result = self._fresh(g, split)
        self.cache.put(key, result.to_dict())
        return result

    def value(self, g: Graph, split: bool = True) -> int:
        return self.solve(g, split).value


@dataclass(frozen=True)
class FeketeStep:
    k: int
    alpha: int
    root_floor: float
    witness: StableSetWitness

    def to_dict(self) -> Dict[str, Any]:
        return {
            "k": self.k,
            "alpha": self.alpha,
            "root_floor": self.root_floor,
            "witness": self.witness.to_dict(),
        }


@dataclass
class FeketeProfile:
    """α(G^k) for k = 1..kmax, with skipped powers and supermultiplicativity checks."""

    steps: List[FeketeStep]
    skipped: List[Dict[str, Any]]
    violations: List[Dict[str, int]]

    def best(self) -> Optional[FeketeStep]:
        return max(self.steps, key=lambda s: s.root_floor, default=None)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "steps": [s.to_dict() for s in self.steps],
            "skipped": self.skipped,
            "violations": self.violations,
        }


def fekete_profile(
    g: Graph, kmax: int, solver: AlphaSolver, max_vertices: int
) -> FeketeProfile:
    """
    Solve α(G^k) for each k <= kmax whose power fits the vertex budget; powers
    that exceed it or whose solve exhausts the α budget are recorded as skipped.
    """
    if kmax < 1:
        raise ParameterError(f"kmax must be >= 1, got {kmax}")
    steps: List[FeketeStep] = []
    skipped: List[Dict[str, Any]] = []
    for k in range(1, kmax + 1):
        size = g.n**k
        if size > max_vertices:
            skipped.append({"k": k, "reason": "vertex budget", "vertices": size})
            continue
        try:
            result = solver.solve(power(g, k))
        except BudgetError as e:
            skipped.append({"k": k, "reason": "alpha budget", "nodes": e.nodes})
            continue
        steps.append(FeketeStep(k, result.value, root_down(result.value, k), result.witness))

    by_k = {s.k: s.alpha for s in steps}
    violations = [
        {"s": s, "t": t, "alpha_sum": by_k[s + t], "product": by_k[s] * by_k[t]}
        for s in by_k
        for t in by_k
        if s <= t and s + t in by_k and by_k[s + t] < by_k[s] * by_k[t]
    ]
    return FeketeProfile(steps, skipped, violations)
