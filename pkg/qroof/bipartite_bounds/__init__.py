from .higher_rank import (
    ExplicitMap,
    SubspaceE2Functional,
    choi_bound,
    choi_map,
    choi_w,
    diagonal_map,
    e2,
    e2_lower_bound,
    restrict_to_subspace,
)
from .rank_two import SubspaceInvariant, bilinear_q, induced_map, rank2_concurrence, subspace_w
from .subspace import (
    Subspace2,
    ghz_state,
    ghz_w_subspace,
    partial_trace_b,
    product_subspace,
    separable_pair,
    separable_pair_subspace,
    w_state,
)

__all__ = [
    "ExplicitMap",
    "Subspace2",
    "SubspaceE2Functional",
    "SubspaceInvariant",
    "bilinear_q",
    "choi_bound",
    "choi_map",
    "choi_w",
    "diagonal_map",
    "e2",
    "e2_lower_bound",
    "ghz_state",
    "ghz_w_subspace",
    "induced_map",
    "partial_trace_b",
    "product_subspace",
    "rank2_concurrence",
    "restrict_to_subspace",
    "separable_pair",
    "separable_pair_subspace",
    "subspace_w",
    "w_state",
]
