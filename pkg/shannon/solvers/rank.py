"""
Rank upper bounds on Θ from fitting matrices over a prime field: B with a
nonzero diagonal and B[u, v] = 0 for distinct nonadjacent u, v has
rank(B) >= Θ(G).
"""

from dataclasses import dataclass
from typing import Any, Dict, Iterable, Optional

import numpy as np

from shannon.errors import FittingViolationError, ParameterError
from shannon.graphs.graph import Graph


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def rank_mod_p(matrix, p: int) -> int:
    """Rank over GF(p) by Gaussian elimination on reduced residues."""
    if not is_prime(p):
        raise ParameterError(f"{p} is not prime")
    a = np.array(matrix, dtype=np.int64) % p
    m, n = a.shape
    r = 0
    for c in range(n):
        nonzero = np.flatnonzero(a[r:, c])
        if nonzero.size == 0:
            continue
        pivot = r + int(nonzero[0])
        if pivot != r:
            a[[r, pivot], :] = a[[pivot, r], :]
        inv = pow(int(a[r, c]), -1, p)
        a[r, :] = (a[r, :] * inv) % p
        below = np.flatnonzero(a[r + 1:, c]) + r + 1
        if below.size:
            factors = a[below, c][:, None]
            a[below, :] = (a[below, :] - factors * a[r, :]) % p
        r += 1
        if r == m:
            break
    return r


def check_fitting(g: Graph, b: np.ndarray, p: int) -> None:
    """Raises FittingViolationError naming the first offending entry."""
    n = g.n
    for v in range(n):
        if b[v, v] % p == 0:
            raise FittingViolationError(f"Diagonal entry ({v}, {v}) is zero mod {p}", (v, v))
    for u in range(n):
        for v in range(u + 1, n):
            if not g.adjacent(u, v):
                if b[u, v] % p or b[v, u] % p:
                    raise FittingViolationError(
                        f"Entry ({u}, {v}) is nonzero but {u} and {v} are nonadjacent", (u, v)
                    )


def rank_bound(g: Graph, b, p: int) -> int:
    """rank of the fitting matrix b over GF(p), an upper bound on Θ(g)."""
    if not is_prime(p):
        raise ParameterError(f"{p} is not prime")
    matrix = np.array(b, dtype=np.int64)
    if matrix.shape != (g.n, g.n):
        raise ParameterError(f"Matrix shape {matrix.shape} does not match {g.n} vertices")
    check_fitting(g, matrix, p)
    if g.n == 0:
        return 0
    return rank_mod_p(matrix, p)


@dataclass(frozen=True)
class RankBound:
    value: int
    prime: int
    shift: int

    def to_dict(self) -> Dict[str, Any]:
        return {"source": "rank", "value": self.value, "prime": self.prime, "shift": self.shift}


def rank_bound_search(g: Graph, p: int, shifts: Iterable[int]) -> Optional[RankBound]:
    """Best rank over B = A + c*I (mod p) for the given shifts; None if none fit."""
    if not is_prime(p):
        raise ParameterError(f"{p} is not prime")
    adjacency = g.adjacency_matrix().astype(np.int64)
    best: Optional[RankBound] = None
    for c in shifts:
        if c % p == 0:
            continue
        b = (adjacency + c * np.eye(g.n, dtype=np.int64)) % p
        value = rank_bound(g, b, p)
        if best is None or value < best.value:
            best = RankBound(value, p, c % p)
    return best
