from shannon.graphs.generators import (
    complete,
    cycle,
    empty,
    generate,
    kneser,
    petersen,
    random_graph,
    schlafli,
)
from shannon.graphs.graph import (
    Graph,
    StableSetWitness,
    complement,
    components,
    diagonal_witness,
    empty_graph,
    graph_sum,
    induced,
    is_stable,
    iter_bits,
    power,
    strong_product,
    unit_graph,
)
from shannon.graphs.graph6 import emit_graph6, parse_graph6

__all__ = [
    "Graph",
    "StableSetWitness",
    "complement",
    "complete",
    "components",
    "cycle",
    "diagonal_witness",
    "emit_graph6",
    "empty",
    "empty_graph",
    "generate",
    "graph_sum",
    "induced",
    "is_stable",
    "iter_bits",
    "kneser",
    "parse_graph6",
    "petersen",
    "power",
    "random_graph",
    "schlafli",
    "strong_product",
    "unit_graph",
]
