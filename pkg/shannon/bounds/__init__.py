from shannon.bounds.capacity import (
    CapacityInterval,
    ConverseBound,
    StrictnessCertificate,
    StrictnessKind,
    capacity_interval,
    compare_product_strictness,
    derive_sum_certificate,
    interval_contains,
    intervals_for,
    poly_capacity_lower,
    poly_capacity_upper,
    recheck_lower,
    shannon_sum_lower,
    strict_product_certificate,
    theorem2_converse_bound,
)
from shannon.solvers.rank import rank_bound, rank_bound_search

__all__ = [
    "CapacityInterval",
    "ConverseBound",
    "StrictnessCertificate",
    "StrictnessKind",
    "capacity_interval",
    "compare_product_strictness",
    "derive_sum_certificate",
    "interval_contains",
    "intervals_for",
    "poly_capacity_lower",
    "poly_capacity_upper",
    "recheck_lower",
    "rank_bound",
    "rank_bound_search",
    "shannon_sum_lower",
    "strict_product_certificate",
    "theorem2_converse_bound",
]
