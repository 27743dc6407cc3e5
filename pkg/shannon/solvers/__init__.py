from shannon.solvers.alpha import (
    AlphaResult,
    AlphaSolver,
    alpha,
    alpha_components,
    fekete_profile,
    product_witness,
)
from shannon.solvers.rank import RankBound, rank_bound, rank_bound_search, rank_mod_p
from shannon.solvers.theta import ThetaResult, theta, theta_product_check

__all__ = [
    "AlphaResult",
    "AlphaSolver",
    "RankBound",
    "ThetaResult",
    "alpha",
    "alpha_components",
    "fekete_profile",
    "product_witness",
    "rank_bound",
    "rank_bound_search",
    "rank_mod_p",
    "theta",
    "theta_product_check",
]
