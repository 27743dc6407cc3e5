import math

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from shannon.errors import BudgetError, ConvergenceError, ParameterError
from shannon.graphs import (
    complete,
    cycle,
    empty,
    graph_sum,
    induced,
    parse_graph6,
    petersen,
    power,
    strong_product,
)
from shannon.solvers.theta import theta, theta_product_check
from tests.conftest import graphs
from tests.oracles import alpha_brute


def assert_bracketed(result, exact):
    assert result.lower_cert <= exact + 1e-12
    assert exact - 1e-12 <= result.upper_cert
    assert result.gap <= result.tol
    assert result.lower_cert <= result.value <= result.upper_cert


def test_c5():
    result = theta(cycle(5))
    assert result.value == pytest.approx(math.sqrt(5), abs=1e-5)
    assert_bracketed(result, math.sqrt(5))


def test_complete_graph():
    result = theta(complete(9))
    assert result.value == pytest.approx(1.0, abs=1e-6)
    assert_bracketed(result, 1.0)


def test_edgeless_graph_is_closed_form():
    result = theta(empty(4))
    assert result.value == 4.0
    assert result.solver == "closed-form"
    assert_bracketed(result, 4.0)


def test_petersen():
    assert theta(petersen()).value == pytest.approx(4.0, abs=1e-5)


def test_c5_squared():
    assert theta(power(cycle(5), 2), tol=1e-5).value == pytest.approx(5.0, abs=1e-3)


def test_argument_checks():
    with pytest.raises(ParameterError):
        theta(empty(0))
    with pytest.raises(ParameterError):
        theta(cycle(5), tol=1e-12)
    with pytest.raises(BudgetError):
        theta(cycle(7), max_vertices=6)


def test_iteration_cap_raises_convergence_error():
    with pytest.raises(ConvergenceError) as info:
        theta(cycle(7), tol=1e-9, max_iters=1)
    error = info.value
    assert error.lower_cert <= error.upper_cert
    assert error.best_gap > 1e-9


@given(graphs(min_vertices=1, max_vertices=6))
@settings(max_examples=25)
def test_sandwich_on_random_graphs(g):
    result = theta(g, tol=1e-5)
    assert alpha_brute(g) <= result.upper_cert
    assert result.lower_cert <= g.n


def test_product_check_c5():
    report = theta_product_check(cycle(5), cycle(5))
    assert report.passed
    assert report.difference <= report.allowed
    assert report.to_dict()["pass"] is True


def test_product_check_budget():
    with pytest.raises(BudgetError):
        theta_product_check(cycle(5), cycle(5), max_vertices=20)


def test_c7_closed_form():
    c = math.cos(math.pi / 7)
    exact = 7 * c / (1 + c)
    result = theta(cycle(7))
    assert result.value == pytest.approx(exact, abs=1e-5)
    assert_bracketed(result, exact)


def test_inaccurate_solver_point_is_repaired():
    # the interior point solver hands back an X with slightly negative eigenvalues here
    g = strong_product(parse_graph6("DkO"), parse_graph6("FA_No"))
    assert g.n == 35
    result = theta(g)
    assert result.gap <= 1e-6
    assert result.value == pytest.approx(12.0, abs=1e-5)


@given(graphs(min_vertices=1, max_vertices=12))
@settings(max_examples=100)
def test_sandwich_up_to_twelve_vertices(g):
    result = theta(g, tol=1e-5)
    assert alpha_brute(g) <= result.upper_cert
    coloring = nx.coloring.greedy_color(nx.complement(g.to_networkx()))
    assert result.lower_cert <= max(coloring.values()) + 1


@given(graphs(min_vertices=1, max_vertices=6), graphs(min_vertices=1, max_vertices=6))
@settings(max_examples=20)
def test_additive_over_disjoint_union(g, h):
    tg, th, tsum = theta(g, tol=1e-5), theta(h, tol=1e-5), theta(graph_sum(g, h), tol=1e-5)
    assert tsum.lower_cert <= tg.upper_cert + th.upper_cert
    assert tg.lower_cert + th.lower_cert <= tsum.upper_cert
    assert tsum.value == pytest.approx(tg.value + th.value, abs=1e-4)


@given(graphs(min_vertices=2, max_vertices=10), st.data())
@settings(max_examples=30)
def test_monotone_under_vertex_deletion(g, data):
    v = data.draw(st.integers(0, g.n - 1))
    smaller = induced(g, [u for u in range(g.n) if u != v])
    assert theta(smaller, tol=1e-5).lower_cert <= theta(g, tol=1e-5).upper_cert


@pytest.mark.slow
@given(graphs(min_vertices=1, max_vertices=8), graphs(min_vertices=1, max_vertices=8))
@settings(max_examples=20)
def test_multiplicative_on_random_pairs(g, h):
    report = theta_product_check(g, h, tol=1e-5)
    assert report.passed, report.to_dict()
