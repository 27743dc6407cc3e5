"""Standard graph families and the generator-spec strings accepted by the CLI."""

import re
from itertools import combinations
from typing import Callable, Dict

import numpy as np

from shannon.errors import ParameterError
from shannon.graphs.graph import Graph, complement, empty_graph


def cycle(n: int) -> Graph:
    if n < 3:
        raise ParameterError(f"cycle needs n >= 3, got {n}")
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)), f"C{n}")


def complete(n: int) -> Graph:
    if n < 0:
        raise ParameterError(f"complete needs n >= 0, got {n}")
    return Graph.from_edges(n, combinations(range(n), 2), f"K{n}")


def empty(n: int) -> Graph:
    return empty_graph(n)


def petersen() -> Graph:
    # outer 5-cycle 0..4, inner pentagram 5..9, spokes i -- i+5
    edges = [(i, (i + 1) % 5) for i in range(5)]
    edges += [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    edges += [(i, i + 5) for i in range(5)]
    return Graph.from_edges(10, edges, "petersen")


def kneser(n: int, k: int) -> Graph:
    """k-subsets of {0..n-1} in lexicographic order, adjacent iff disjoint."""
    if k < 1 or n < 2 * k:
        raise ParameterError(f"kneser needs k >= 1 and n >= 2k, got n={n}, k={k}")
    subsets = [frozenset(c) for c in combinations(range(n), k)]
    edges = [
        (i, j)
        for i, j in combinations(range(len(subsets)), 2)
        if not subsets[i] & subsets[j]
    ]
    return Graph.from_edges(len(subsets), edges, f"kneser({n},{k})")


def _lines_meeting_graph() -> Graph:
    """
    The 27 lines on a cubic surface, adjacent iff they meet: a_i, b_i (i < 6) and
    c_ij (i < j < 6). a_i meets b_j for i != j; a_i and b_i meet c_jk when
    i in {j, k}; c_ij meets c_kl when the pairs are disjoint.
    """
    labels = [("a", i) for i in range(6)] + [("b", i) for i in range(6)]
    labels += [("c", pair) for pair in combinations(range(6), 2)]

    def meet(x, y) -> bool:
        (kx, vx), (ky, vy) = x, y
        if kx == ky == "c":
            return not set(vx) & set(vy)
        if {kx, ky} == {"a", "b"}:
            return vx != vy
        if kx == ky:
            return False
        single, pair = (vx, vy) if ky == "c" else (vy, vx)
        return single in pair

    edges = [
        (i, j)
        for i, j in combinations(range(len(labels)), 2)
        if meet(labels[i], labels[j])
    ]
    return Graph.from_edges(27, edges)


def schlafli() -> Graph:
    """Strongly regular (27, 16, 10, 8): the 27 lines, adjacent iff skew."""
    g = complement(_lines_meeting_graph())
    return Graph(g.n, g.rows, "schlafli")


def random_graph(n: int, p: float, rng: np.random.Generator) -> Graph:
    """Erdős–Rényi G(n, p) drawn from `rng`."""
    if n < 0 or not 0.0 <= p <= 1.0:
        raise ParameterError(f"random graph needs n >= 0 and 0 <= p <= 1, got n={n}, p={p}")
    draws = rng.random(n * (n - 1) // 2)
    pairs = combinations(range(n), 2)
    edges = [pair for pair, x in zip(pairs, draws) if x < p]
    return Graph.from_edges(n, edges, f"rnd{n}")


_NAMED: Dict[str, Callable[[], Graph]] = {
    "petersen": petersen,
    "schlafli": schlafli,
}

_SIZED: Dict[str, Callable[[int], Graph]] = {
    "c": cycle,
    "k": complete,
    "e": empty,
}

_SIZED_PATTERN = re.compile(r"^([cke])(\d+)$")
_KNESER_PATTERN = re.compile(r"^kneser:(\d+),(\d+)$")


def generate(spec: str) -> Graph:
    """
    Resolve a generator spec: "c5", "k7", "e3", "petersen", "kneser:5,2",
    "schlafli". Case-insensitive, surrounding whitespace ignored.
    """
    text = spec.strip().lower()
    if text in _NAMED:
        return _NAMED[text]()
    match = _SIZED_PATTERN.match(text)
    if match:
        return _SIZED[match.group(1)](int(match.group(2)))
    match = _KNESER_PATTERN.match(text)
    if match:
        return kneser(int(match.group(1)), int(match.group(2)))
    raise ParameterError(f"Unknown generator spec: '{spec}'")
