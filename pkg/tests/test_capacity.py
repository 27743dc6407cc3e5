import math
from dataclasses import replace
from fractions import Fraction

import pytest

from shannon.algebra import parse_polynomial
from shannon.bounds import (
    CapacityInterval,
    StrictnessCertificate,
    StrictnessKind,
    capacity_interval,
    compare_product_strictness,
    derive_sum_certificate,
    interval_contains,
    poly_capacity_lower,
    poly_capacity_upper,
    recheck_lower,
    shannon_sum_lower,
    strict_product_certificate,
    theorem2_converse_bound,
)
from shannon.errors import DerivationFailedError, NoLowerBoundError, ParameterError
from shannon.graphs import complete, cycle, empty, empty_graph, is_stable, power, strong_product
from shannon.solvers.alpha import AlphaSolver, alpha

SQRT5 = math.sqrt(5)
synthetic = CapacityInterval.synthetic


class TestCapacityInterval:
    def test_c5_collapses_on_sqrt5(self, c5, solver):
        interval = capacity_interval(c5, 2, solver=solver)
        assert interval.lower <= SQRT5 <= interval.upper
        assert interval.width <= 1e-4
        assert interval.collapsed(1e-4)
        assert interval.lower_provenance["source"] == "alpha"
        assert interval.lower_provenance["k"] == 2
        assert interval.lower_provenance["alpha"] == 5
        assert interval.upper_provenance["source"] == "theta"
        assert interval.graph_ref == "Dhc"

    @pytest.mark.parametrize("m", [1, 2, 3, 5])
    def test_edgeless_graphs(self, m, solver):
        interval = capacity_interval(empty(m), 2, solver=solver)
        assert interval.lower == m
        assert interval.upper >= m
        assert interval.upper == pytest.approx(m, abs=1e-5)

    @pytest.mark.parametrize("m", [2, 4])
    def test_complete_graphs(self, m, solver):
        interval = capacity_interval(complete(m), 2, solver=solver)
        assert interval.lower == 1.0
        assert interval.upper == pytest.approx(1.0, abs=1e-5)

    def test_rank_bound_tightens_complete_graph(self, solver):
        interval = capacity_interval(complete(4), 2, solver=solver, rank_primes=(2,))
        assert interval.upper == 1.0
        assert interval.upper_provenance["source"] == "rank"

    def test_graph_without_vertices(self, solver):
        interval = capacity_interval(empty_graph(0), 2, solver=solver)
        assert (interval.lower, interval.upper) == (0.0, 0.0)

    def test_every_power_skipped(self, c5, solver):
        with pytest.raises(NoLowerBoundError) as info:
            capacity_interval(c5, 2, solver=solver, max_vertices=1)
        assert len(info.value.skipped) == 2

    def test_kmax_must_be_positive(self, c5, solver):
        with pytest.raises(ParameterError):
            capacity_interval(c5, 0, solver=solver)

    def test_contains(self):
        interval = synthetic(2.0, 3.0)
        assert interval_contains(interval, 2.5)
        assert not interval_contains(interval, 3.1)
        assert interval_contains(interval, 3.1, tol=0.2)

    def test_lower_end_is_reproducible(self, c5, solver):
        interval = capacity_interval(c5, 2, solver=solver)
        witness = interval.lower_provenance["witness"]
        assert len(witness) == 5
        assert is_stable(power(c5, 2), witness)
        assert recheck_lower(interval, c5, solver)

    def test_tampered_witness_is_caught(self, c5, solver):
        interval = capacity_interval(c5, 2, solver=solver)
        provenance = {**interval.lower_provenance, "witness": [0, 1, 2, 3, 4]}
        assert not recheck_lower(replace(interval, lower_provenance=provenance), c5, solver)
        provenance = {**interval.lower_provenance, "witness": [0, 2]}
        assert not recheck_lower(replace(interval, lower_provenance=provenance), c5, solver)

    def test_synthetic_ends_have_no_witness(self, c5):
        with pytest.raises(ParameterError):
            recheck_lower(synthetic(2.0, 3.0), c5)

    @pytest.mark.slow
    def test_lower_end_never_drops_as_kmax_doubles(self, c5):
        # powers whose α solve exceeds the node budget are skipped, never lowered
        solver = AlphaSolver(max_nodes=50_000, max_seconds=20.0)
        lowers = [capacity_interval(c5, k, solver=solver).lower for k in (1, 2, 4)]
        assert lowers == sorted(lowers)
        assert lowers[0] == 2.0
        assert lowers[1] > 2.236


class TestPolynomialBounds:
    def test_sum_of_products_of_empty_graphs(self, e2, e3, solver):
        p = parse_polynomial("x^2 + 2 x y")
        assert poly_capacity_lower(p, [e2, e3], 2, solver=solver) == 16.0
        upper = poly_capacity_upper(p, [e2, e3])
        assert upper >= 16.0
        assert upper == pytest.approx(16.0, abs=1e-4)

    def test_c5_square(self, c5, solver):
        p = parse_polynomial("x^2")
        lower = poly_capacity_lower(p, [c5], 2, solver=solver)
        upper = poly_capacity_upper(p, [c5])
        assert lower <= 5.0 <= upper
        assert upper - lower <= 1e-3

    def test_precomputed_intervals(self, c5, solver):
        intervals = [synthetic(2.0, 2.5)]
        p = parse_polynomial("x^2 + 1")
        assert poly_capacity_lower(p, [c5], intervals=intervals) == 5.0
        assert poly_capacity_upper(p, [c5], intervals=intervals) == 7.25

    def test_rank_end_is_replaced_by_theta(self, solver):
        k4 = complete(4)
        intervals = [capacity_interval(k4, 2, solver=solver, rank_primes=(2,))]
        upper = poly_capacity_upper(parse_polynomial("x"), [k4], intervals=intervals)
        assert upper == pytest.approx(1.0, abs=1e-5)

    def test_product_only_mode(self, c5):
        assert poly_capacity_upper(parse_polynomial("x y"), [c5, c5], products_only=True) == pytest.approx(5.0, abs=1e-4)
        with pytest.raises(ParameterError):
            poly_capacity_upper(parse_polynomial("x + y"), [c5, c5], products_only=True)
        with pytest.raises(ParameterError):
            poly_capacity_upper(parse_polynomial("2 x"), [c5], products_only=True)

    def test_arity_mismatch(self, c5):
        with pytest.raises(ParameterError):
            poly_capacity_lower(parse_polynomial("x y"), [c5], intervals=[synthetic(1, 1)])
        with pytest.raises(ParameterError):
            poly_capacity_upper(parse_polynomial("x y"), [c5])


class TestStrictness:
    def test_c5_c5_is_inconclusive(self, c5, solver):
        certificate, (i_g, i_h, i_gh) = strict_product_certificate(c5, c5, 2, solver=solver, product_kmax=1)
        assert certificate is None
        assert i_gh.lower == 5.0

    def test_empty_graphs_are_inconclusive(self, e2, e3, solver):
        certificate, _ = strict_product_certificate(e2, e3, 2, solver=solver, product_kmax=1)
        assert certificate is None

    def test_synthetic_product_certificate(self):
        certificate = compare_product_strictness(synthetic(2.0, 2.0), synthetic(3.5, 3.5), synthetic(7.1, 7.1))
        assert certificate.kind is StrictnessKind.PRODUCT
        assert certificate.slack == pytest.approx(0.1, abs=1e-9)
        assert 0 < certificate.slack <= Fraction(7.1) - 7
        assert certificate.to_dict()["kind"] == "product-strict"

    def test_equality_gives_no_certificate(self):
        assert compare_product_strictness(synthetic(2.0, 2.0), synthetic(3.5, 3.5), synthetic(7.0, 7.0)) is None

    def test_certificate_numbers_reproduce(self, c5, solver):
        c5_squared = strong_product(c5, c5)
        i_gh = capacity_interval(c5_squared, 1, tol=1e-5, solver=solver)
        two = synthetic(2.0, 2.0)
        product = compare_product_strictness(two, two, i_gh)
        derived = derive_sum_certificate(product, two, two)
        for certificate in (product, derived):
            provenance = certificate.numbers["lower_gh_provenance"]
            k, value = provenance["k"], provenance["alpha"]
            g_k = power(c5_squared, k)
            assert len(provenance["witness"]) == value
            assert is_stable(g_k, provenance["witness"])
            assert alpha(g_k).value == value
        assert recheck_lower(i_gh, c5_squared, solver)


def product_certificate(lower_gh: float) -> StrictnessCertificate:
    return StrictnessCertificate(StrictnessKind.PRODUCT, {"lower_gh": lower_gh}, 0.0)


class TestSumDerivation:
    def test_slack_two(self):
        certificate = derive_sum_certificate(product_certificate(7.0), synthetic(2.0, 2.0), synthetic(3.0, 3.0))
        assert certificate.kind is StrictnessKind.SUM
        assert certificate.slack == 2.0
        assert certificate.numbers["lower_sum_squared"] == 27.0
        assert certificate.numbers["upper_sum_squared"] == 25.0

    def test_equality_fails(self):
        with pytest.raises(DerivationFailedError) as info:
            derive_sum_certificate(product_certificate(4.0), synthetic(2.0, 2.0), synthetic(2.0, 2.0))
        assert info.value.deficit == 0.0

    def test_wide_intervals_fail(self):
        with pytest.raises(DerivationFailedError) as info:
            derive_sum_certificate(product_certificate(5.0), synthetic(2.0, 3.0), synthetic(2.0, 3.0))
        assert info.value.deficit == 18.0

    def test_needs_a_product_certificate(self):
        certificate = StrictnessCertificate(StrictnessKind.SUM, {"lower_gh": 9.0}, 1.0)
        with pytest.raises(ParameterError):
            derive_sum_certificate(certificate, synthetic(1.0, 1.0), synthetic(1.0, 1.0))

    def test_grid_matches_exact_arithmetic(self):
        sides = [1 + 0.25 * i for i in range(10)]
        products = [1 + 0.5 * i for i in range(10)]
        derived = failed = 0
        for lg in sides:
            for lh in sides[::-1]:
                for lgh in products:
                    exact = Fraction(lg) ** 2 + 2 * Fraction(lgh) + Fraction(lh) ** 2 - (Fraction(lg) + Fraction(lh)) ** 2
                    i_g, i_h = synthetic(lg, lg), synthetic(lh, lh)
                    if exact > 0:
                        certificate = derive_sum_certificate(product_certificate(lgh), i_g, i_h)
                        assert 0 < certificate.slack <= exact
                        derived += 1
                    else:
                        with pytest.raises(DerivationFailedError):
                            derive_sum_certificate(product_certificate(lgh), i_g, i_h)
                        failed += 1
        assert derived + failed == 1000
        assert derived and failed


class TestConverseBound:
    def test_c5_c5_square(self, c5, solver):
        interval = capacity_interval(c5, 2, solver=solver)
        bound = theorem2_converse_bound(c5, c5, 1, 1, (interval, interval), n=2, solver=solver)
        assert bound.alpha_sum_power == 20
        assert bound.theta_check_passed is True
        assert 20.0 <= bound.theta_sum_power_bound <= 20.0 + 1e-4
        assert bound.assumed_bound == pytest.approx(5.0, abs=1e-4)

    def test_empty_graphs_cube(self, e2, e3, solver):
        bound = theorem2_converse_bound(e2, e3, 2, 1, (synthetic(2.0, 2.0), synthetic(3.0, 3.0)), n=3, solver=solver)
        assert bound.alpha_sum_power == 125
        assert bound.theta_check_passed is True
        assert bound.assumed_bound == 12.0
        assert bound.assumed_sum_power_bound == 125.0

    def test_over_budget_skips_alpha(self, c5, solver):
        interval = synthetic(2.0, 2.5)
        bound = theorem2_converse_bound(c5, c5, 1, 1, (interval, interval), n=3, solver=solver, max_vertices=10)
        assert bound.alpha_sum_power is None
        assert bound.theta_check_passed is None

    def test_argument_checks(self, c5):
        interval = synthetic(2.0, 2.5)
        with pytest.raises(ParameterError):
            theorem2_converse_bound(c5, c5, 0, 0, (interval, interval))
        with pytest.raises(ParameterError):
            theorem2_converse_bound(c5, c5, 1, 1, (interval, interval), n=0)


def test_shannon_sum_lower(c5, solver):
    assert shannon_sum_lower(c5, c5, 1, solver) == 4.0
    two = shannon_sum_lower(c5, c5, 2, solver)
    assert 4.4721359 < two <= 2 * SQRT5
    with pytest.raises(ParameterError):
        shannon_sum_lower(c5, c5, 0, solver)
