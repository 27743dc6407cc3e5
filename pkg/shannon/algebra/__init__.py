from shannon.algebra.polynomial import (
    Monomial,
    Polynomial,
    divisor_exponent,
    evaluate,
    evaluate_at,
    evaluate_exact,
    expand_sum_power,
    format_polynomial,
    full_support_power,
    monomial_divides,
    multinomial_expand,
    parse_polynomial,
    variables_occurring,
    vertex_count,
)

__all__ = [
    "Monomial",
    "Polynomial",
    "divisor_exponent",
    "evaluate",
    "evaluate_at",
    "evaluate_exact",
    "expand_sum_power",
    "format_polynomial",
    "full_support_power",
    "monomial_divides",
    "multinomial_expand",
    "parse_polynomial",
    "variables_occurring",
    "vertex_count",
]
