from itertools import combinations

import networkx as nx
import numpy as np
import pytest

from shannon.errors import ParameterError
from shannon.graphs import complete, cycle, empty, generate, kneser, petersen, random_graph, schlafli
from tests.oracles import to_networkx


def test_cycle():
    c = cycle(5)
    assert (c.n, c.edge_count) == (5, 5)
    assert c.adjacent(0, 4)
    with pytest.raises(ParameterError):
        cycle(2)


def test_complete_and_empty():
    assert complete(5).edge_count == 10
    assert empty(4).edge_count == 0
    assert empty(0).n == 0


def test_petersen_is_cubic():
    g = petersen()
    assert (g.n, g.edge_count) == (10, 15)
    assert set(g.degrees()) == {3}


def test_kneser_5_2_is_petersen():
    k = kneser(5, 2)
    assert (k.n, k.edge_count) == (10, 15)
    assert nx.is_isomorphic(to_networkx(k), to_networkx(petersen()))


def test_kneser_parameters():
    with pytest.raises(ParameterError):
        kneser(3, 2)
    with pytest.raises(ParameterError):
        kneser(4, 0)


def test_schlafli_is_strongly_regular():
    g = schlafli()
    assert g.n == 27
    assert set(g.degrees()) == {16}
    for u, v in combinations(range(g.n), 2):
        common = (g.rows[u] & g.rows[v]).bit_count()
        assert common == (10 if g.adjacent(u, v) else 8)


def test_random_graph_is_seeded():
    a = random_graph(8, 0.5, np.random.default_rng(7))
    b = random_graph(8, 0.5, np.random.default_rng(7))
    assert a == b
    assert random_graph(6, 0.0, np.random.default_rng(1)).edge_count == 0
    assert random_graph(6, 1.0, np.random.default_rng(1)) == complete(6)
    with pytest.raises(ParameterError):
        random_graph(3, 1.5, np.random.default_rng(1))


@pytest.mark.parametrize(
    "spec, n, edges",
    [
        ("c5", 5, 5),
        ("K7", 7, 21),
        ("e3", 3, 0),
        ("k1", 1, 0),
        ("petersen", 10, 15),
        ("kneser:5,2", 10, 15),
        (" Schlafli ", 27, 216),
    ],
)
def test_generate_specs(spec, n, edges):
    g = generate(spec)
    assert (g.n, g.edge_count) == (n, edges)


@pytest.mark.parametrize("spec", ["bogus", "c2", "kneser:3,2", "x5", ""])
def test_generate_rejects_bad_specs(spec):
    with pytest.raises(ParameterError):
        generate(spec)
