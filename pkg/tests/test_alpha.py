import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from shannon.algebra import expand_sum_power
from shannon.errors import BudgetError, ParameterError
from shannon.graphs import (
    StableSetWitness,
    cycle,
    empty,
    graph_sum,
    is_stable,
    kneser,
    petersen,
    power,
    random_graph,
    schlafli,
    strong_product,
    unit_graph,
)
from shannon.solvers.alpha import AlphaSolver, alpha, alpha_components, fekete_profile, product_witness
from tests.conftest import graphs
from tests.oracles import alpha_brute, alpha_networkx, has_stable_set_of_size


def test_c5(c5):
    result = alpha(c5)
    assert result.value == 2
    assert is_stable(c5, result.witness)


def test_c5_squared_against_combinations(c5):
    g = power(c5, 2)
    assert alpha(g).value == 5
    assert has_stable_set_of_size(g, 5) is not None
    assert has_stable_set_of_size(g, 6) is None


def test_empty_and_unit():
    assert alpha(empty(0)).value == 0
    assert alpha(empty(7)).value == 7
    assert alpha(unit_graph()).value == 1


def test_disjoint_sum(c5, solver):
    g = graph_sum(c5, c5)
    assert alpha(g).value == 4
    assert alpha_components(g).value == 4
    assert alpha_components(g).stats["components"] == 2
    assert solver.value(g, split=False) == solver.value(g, split=True)


def test_expanded_sum_power(c5, solver):
    g = expand_sum_power(c5, c5, 2)
    result = solver.solve(g)
    assert result.value == 20
    assert is_stable(g, result.witness)


@pytest.mark.parametrize("p", [0.2, 0.5, 0.8])
@given(data=st.data())
@settings(max_examples=70)
def test_random_graphs_against_exhaustive_oracle(p, data):
    g = data.draw(graphs(max_vertices=12, edge_probability=p))
    result = alpha(g)
    assert result.value == alpha_brute(g)
    assert len(result.witness) == result.value
    assert is_stable(g, result.witness)


@pytest.mark.parametrize(
    "g, expected",
    [(petersen(), 4), (schlafli(), 3), (kneser(7, 3), 15), (cycle(7), 3)],
)
def test_stock_graphs_against_networkx(g, expected):
    assert alpha(g).value == expected
    assert alpha_networkx(g) == expected


@given(graphs(max_vertices=10), graphs(max_vertices=10))
@settings(max_examples=100)
def test_additive_on_random_pairs(g, h):
    assert alpha(graph_sum(g, h)).value == alpha(g).value + alpha(h).value


@given(graphs(max_vertices=6), graphs(max_vertices=6))
@settings(max_examples=50)
def test_supermultiplicative_on_random_pairs(g, h):
    r_g, r_h = alpha(g), alpha(h)
    gh = strong_product(g, h)
    assert alpha(gh).value >= r_g.value * r_h.value
    witness = product_witness(r_g.witness, r_h.witness, g, h)
    assert len(witness) == r_g.value * r_h.value
    assert is_stable(gh, witness)


def test_seeded_random_graphs_against_networkx(rng):
    for _ in range(10):
        g = random_graph(int(rng.integers(10, 25)), 0.3, rng)
        assert alpha_components(g).value == alpha_networkx(g)


def test_node_budget_reports_partial_witness(c5):
    g = power(c5, 2)
    with pytest.raises(BudgetError) as info:
        alpha(g, max_nodes=1)
    error = info.value
    assert error.nodes == 2
    assert error.best
    assert is_stable(g, error.best)
    assert error.details()["best_lower_bound"] == len(error.best)


def test_product_witness(c5):
    w = StableSetWitness((0, 2))
    product = product_witness(w, w, c5, c5)
    assert product.vertices == (0, 2, 10, 12)
    assert is_stable(power(c5, 2), product)


def test_product_witness_rejects_unstable_sets(c5):
    with pytest.raises(ParameterError):
        product_witness(StableSetWitness((0, 1)), StableSetWitness((0,)), c5, unit_graph())


class TestFekete:
    def test_c5_profile(self, c5, solver):
        profile = fekete_profile(c5, 2, solver, 10**6)
        assert [(s.k, s.alpha) for s in profile.steps] == [(1, 2), (2, 5)]
        assert profile.best().k == 2
        assert 2.2360679 < profile.best().root_floor <= 5**0.5
        assert profile.violations == []

    def test_vertex_budget_skips_powers(self, c5, solver):
        profile = fekete_profile(c5, 2, solver, 10)
        assert [s.k for s in profile.steps] == [1]
        assert profile.skipped == [{"k": 2, "reason": "vertex budget", "vertices": 25}]

    def test_alpha_budget_skips_powers(self, c5):
        profile = fekete_profile(c5, 2, AlphaSolver(max_nodes=1), 10**6)
        assert profile.steps == []
        assert [entry["reason"] for entry in profile.skipped] == ["alpha budget", "alpha budget"]

    def test_kmax_must_be_positive(self, c5, solver):
        with pytest.raises(ParameterError):
            fekete_profile(c5, 0, solver, 10)

    @pytest.mark.parametrize("g", [cycle(5), cycle(7), petersen()], ids=["c5", "c7", "petersen"])
    def test_power_of_power_dominates(self, g):
        # powers that do not fit the budgets are skipped; the rest are compared exactly
        profile = fekete_profile(g, 4, AlphaSolver(max_nodes=200_000, max_seconds=30.0), 125)
        by_k = {s.k: s.alpha for s in profile.steps}
        assert 1 in by_k and 2 in by_k
        compared = 0
        for s in range(1, 5):
            for t in range(1, 5 // s + 1):
                if s * t <= 4 and s in by_k and s * t in by_k:
                    assert by_k[s * t] >= by_k[s] ** t
                    compared += 1
        assert compared >= 3

    def test_steps_keep_their_witnesses(self, c5, solver):
        profile = fekete_profile(c5, 2, solver, 10**6)
        for step in profile.steps:
            assert len(step.witness) == step.alpha
            assert is_stable(power(c5, step.k), step.witness)
        assert profile.to_dict()["steps"][1]["witness"] == list(profile.steps[1].witness.vertices)
