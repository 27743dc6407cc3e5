"""
Loopless undirected graphs on {0, ..., n-1} with one bitmask per vertex, and the
semiring operations on them: disjoint sum, strong product, powers, complement.

Graphs are immutable values. Row v is an int whose bit u is set iff u ~ v.
"""

from dataclasses import dataclass, field
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple, Union

import networkx as nx
import numpy as np

from shannon.errors import ParameterError


@dataclass(frozen=True)
class Graph:
    n: int
    rows: Tuple[int, ...]
    provenance: Optional[str] = field(default=None, compare=False)

    # Constructors --------------------------------------------------------
    @classmethod
    def from_rows(
        cls, rows: Sequence[int], provenance: Optional[str] = None
    ) -> "Graph":
        """Build from adjacency bitmasks, checking symmetry and looplessness."""
        graph = cls(len(rows), tuple(int(r) for r in rows), provenance)
        graph.check()
        return graph

    @classmethod
    def from_edges(
        cls, n: int, edges: Iterable[Tuple[int, int]], provenance: Optional[str] = None
    ) -> "Graph":
        if n < 0:
            raise ParameterError(f"Vertex count must be nonnegative, got {n}")
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ParameterError(f"Edge ({u}, {v}) out of range for {n} vertices")
            if u == v:
                raise ParameterError(f"Loop at vertex {u}; graphs are loopless")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows), provenance)

    @classmethod
    def from_adjacency_matrix(
        cls, matrix, provenance: Optional[str] = None
    ) -> "Graph":
        a = np.asarray(matrix, dtype=bool)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ParameterError(f"Adjacency matrix must be square, got shape {a.shape}")
        if not np.array_equal(a, a.T):
            raise ParameterError("Adjacency matrix is not symmetric")
        if a.diagonal().any():
            raise ParameterError("Adjacency matrix has a nonzero diagonal")
        rows = []
        for v in range(a.shape[0]):
            row = 0
            for u in np.flatnonzero(a[v]):
                row |= 1 << int(u)
            rows.append(row)
        return cls(a.shape[0], tuple(rows), provenance)

    @classmethod
    def from_networkx(cls, nxg: nx.Graph, provenance: Optional[str] = None) -> "Graph":
        """Relabels nodes 0..n-1 in nxg's node order."""
        index = {node: i for i, node in enumerate(nxg.nodes)}
        return cls.from_edges(
            len(index), ((index[u], index[v]) for u, v in nxg.edges), provenance
        )

    def to_networkx(self) -> nx.Graph:
        out = nx.Graph()
        out.add_nodes_from(range(self.n))
        out.add_edges_from(self.edges())
        return out

    def check(self) -> None:
        """Raises ParameterError unless the rows describe a loopless undirected graph."""
        if len(self.rows) != self.n:
            raise ParameterError(f"Expected {self.n} rows, got {len(self.rows)}")
        limit = 1 << self.n
        for v, row in enumerate(self.rows):
            if row < 0 or row >= limit:
                raise ParameterError(f"Row {v} references a vertex outside 0..{self.n - 1}")
            if row >> v & 1:
                raise ParameterError(f"Loop at vertex {v}; graphs are loopless")
            rest = row
            while rest:
                low = rest & -rest
                u = low.bit_length() - 1
                if not self.rows[u] >> v & 1:
                    raise ParameterError(f"Adjacency not symmetric between {v} and {u}")
                rest ^= low

    # Views ----------------------------------------------------------------
    @property
    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    def adjacent(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def degrees(self) -> List[int]:
        return [row.bit_count() for row in self.rows]

    def neighbors(self, v: int) -> List[int]:
        return list(iter_bits(self.rows[v]))

    @property
    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.rows) // 2

    def edges(self) -> Iterator[Tuple[int, int]]:
        for v, row in enumerate(self.rows):
            for u in iter_bits(row >> (v + 1)):
                yield v, v + 1 + u

    def adjacency_matrix(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=bool)
        for u, v in self.edges():
            a[u, v] = a[v, u] = True
        return a

    def label(self) -> str:
        return self.provenance or f"G{self.n}"

    # Semiring notation: G + H, G * H, G ** k
    def __add__(self, other: "Graph") -> "Graph":
        return graph_sum(self, other)

    def __mul__(self, other: "Graph") -> "Graph":
        return strong_product(self, other)

    def __pow__(self, k: int) -> "Graph":
        return power(self, k)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edge_count}, provenance={self.provenance!r})"


@dataclass(frozen=True)
class StableSetWitness:
    vertices: Tuple[int, ...]

    def __post_init__(self):
        normalized = tuple(sorted(set(int(v) for v in self.vertices)))
        if len(normalized) != len(self.vertices):
            raise ParameterError("Witness vertices must be distinct")
        object.__setattr__(self, "vertices", normalized)

    @classmethod
    def from_mask(cls, mask: int) -> "StableSetWitness":
        return cls(tuple(iter_bits(mask)))

    @property
    def mask(self) -> int:
        m = 0
        for v in self.vertices:
            m |= 1 << v
        return m

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    def to_dict(self):
        return list(self.vertices)


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def empty_graph(n: int) -> Graph:
    if n < 0:
        raise ParameterError(f"Vertex count must be nonnegative, got {n}")
    return Graph(n, (0,) * n, f"E{n}")


def unit_graph() -> Graph:
    """K1, the multiplicative unit."""
    return Graph(1, (0,), "K1")


def _tag(graph: Graph) -> str:
    tag = graph.label()
    return tag if tag.isalnum() else f"({tag})"


def graph_sum(g: Graph, h: Graph) -> Graph:
    """Disjoint union; h's vertices are shifted by |g|."""
    shift = g.n
    rows = g.rows + tuple(row << shift for row in h.rows)
    return Graph(g.n + h.n, rows, f"{_tag(g)}+{_tag(h)}")


def _strong_rows(g: Graph, h: Graph) -> Tuple[int, ...]:
    m = h.n
    closed_h = [h.rows[v] | (1 << v) for v in range(m)]
    rows: List[int] = []
    for u in range(g.n):
        blocks = list(iter_bits(g.rows[u] | (1 << u)))
        for v in range(m):
            pattern = closed_h[v]
            row = 0
            for up in blocks:
                row |= pattern << (up * m)
            rows.append(row & ~(1 << (u * m + v)))
    return tuple(rows)


def strong_product(g: Graph, h: Graph) -> Graph:
    """
    Strong product with row-major flattening (u, v) -> u*|h| + v. Distinct pairs
    are adjacent iff each coordinate is equal or adjacent.
    """
    return Graph(g.n * h.n, _strong_rows(g, h), f"{_tag(g)}*{_tag(h)}")


def power(g: Graph, k: int) -> Graph:
    """
    k-fold strong product, left-associated; power(g, 0) is K1.

    Built by repeated squaring. The row-major flattening makes G^a * G^b and
    G^(a+b) the same labelled graph, so the grouping does not matter.
    """
    if k < 0:
        raise ParameterError(f"Power must be nonnegative, got {k}")
    if k == 0:
        return unit_graph()
    if k == 1:
        return g
    label = f"{_tag(g)}^{k}"
    # K1^k = K1 and E0^k = E0
    if g.n <= 1:
        return Graph(g.n, g.rows, label)
    result: Optional[Graph] = None
    base = g
    while True:
        if k & 1:
            result = base if result is None else Graph(result.n * base.n, _strong_rows(result, base))
        k >>= 1
        if not k:
            break
        base = Graph(base.n * base.n, _strong_rows(base, base))
    return Graph(result.n, result.rows, label)


def complement(g: Graph) -> Graph:
    full = g.vertex_mask
    rows = tuple(full & ~row & ~(1 << v) for v, row in enumerate(g.rows))
    return Graph(g.n, rows, f"~{_tag(g)}")


def induced(g: Graph, vertices: Iterable[int]) -> Graph:
    """Subgraph induced on `vertices`, relabelled in increasing order."""
    keep = sorted(set(vertices))
    for v in keep:
        if not 0 <= v < g.n:
            raise ParameterError(f"Vertex {v} out of range for {g.n} vertices")
    position = {v: i for i, v in enumerate(keep)}
    rows = []
    for v in keep:
        row = 0
        for u in iter_bits(g.rows[v]):
            if u in position:
                row |= 1 << position[u]
        rows.append(row)
    return Graph(len(keep), tuple(rows), f"{_tag(g)}[{len(keep)}]")


def components(g: Graph) -> List[int]:
    """Connected components as vertex bitmasks, ordered by lowest vertex."""
    remaining = g.vertex_mask
    found: List[int] = []
    while remaining:
        frontier = remaining & -remaining
        component = frontier
        while frontier:
            low = frontier & -frontier
            frontier ^= low
            fresh = g.rows[low.bit_length() - 1] & ~component
            component |= fresh
            frontier |= fresh
        found.append(component)
        remaining &= ~component
    return found


def _as_vertices(g: Graph, s: Union[StableSetWitness, Iterable[int]]) -> Tuple[int, ...]:
    vertices = tuple(s.vertices if isinstance(s, StableSetWitness) else s)
    for v in vertices:
        if not 0 <= v < g.n:
            raise ParameterError(f"Vertex {v} out of range for {g.n} vertices")
    return vertices


def is_stable(g: Graph, s: Union[StableSetWitness, Iterable[int]]) -> bool:
    """True iff no two members of s are adjacent in g."""
    vertices = _as_vertices(g, s)
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return all(not g.rows[v] & mask for v in vertices)


def diagonal_witness(g: Graph) -> StableSetWitness:
    """{(v, v)} in g * complement(g): stable, so α(g * ~g) >= |V(g)|."""
    return StableSetWitness(tuple(v * g.n + v for v in range(g.n)))
