import os
from typing import Optional

import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from shannon.config import Settings
from shannon.graphs import Graph, cycle, empty, random_graph, unit_graph
from shannon.solvers.alpha import AlphaSolver

settings.register_profile("ci", max_examples=200, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("dev", max_examples=50, deadline=None)
settings.register_profile("debug", max_examples=10, deadline=None)
settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "dev"))


@st.composite
def graphs(
    draw, min_vertices: int = 0, max_vertices: int = 6, edge_probability: Optional[float] = None
) -> Graph:
    """
    Random loopless undirected graphs, drawn edge by edge. With an edge
    probability the edges come from G(n, p) under a drawn seed instead.
    """
    n = draw(st.integers(min_vertices, max_vertices))
    if edge_probability is not None:
        seed = draw(st.integers(0, 2**32 - 1))
        return random_graph(n, edge_probability, np.random.default_rng(seed))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [pair for pair, keep in zip(pairs, chosen) if keep])


@pytest.fixture
def rng():
    return np.random.default_rng(42)


@pytest.fixture
def solver():
    return AlphaSolver(max_nodes=10_000_000, max_seconds=60.0)


@pytest.fixture
def c5():
    return cycle(5)


@pytest.fixture
def k1():
    return unit_graph()


@pytest.fixture
def e2():
    return empty(2)


@pytest.fixture
def e3():
    return empty(3)


@pytest.fixture
def quick_settings(tmp_path):
    """Small suite sizes so the whole suite runs in seconds."""
    base = Settings()
    s = base.replace(
        "general",
        report_dir=str(tmp_path / "reports"),
        cache_dir=str(tmp_path / "cache"),
    )
    s = s.replace(
        "suite",
        graphs=("k1", "e2", "e3", "k3", "c5"),
        additivity_pairs=5,
        supermult_pairs=3,
        expansion_pairs=2,
        expansion_powers=(2,),
        theta_pairs=2,
        theta_max_vertices=5,
        converse_powers=(1,),
    )
    return s
