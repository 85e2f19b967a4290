from .entanglement import (
    EntanglementValue,
    axis_entanglement,
    entanglement,
    entanglement_bounds,
    entanglement_detail,
    flat_leaf,
)
from .phase import (
    BifurcationBetas,
    DegenerateFamily,
    PhaseLabel,
    bifurcation_betas,
    check_beta_ordering,
    classify_phase,
    detect_bifurcation_betas,
    oriented,
)
from .xi import DomainError, xi, xi_convexity_certificate, xi_many, xi_second_derivative

__all__ = [
    "BifurcationBetas",
    "DegenerateFamily",
    "DomainError",
    "EntanglementValue",
    "PhaseLabel",
    "axis_entanglement",
    "bifurcation_betas",
    "check_beta_ordering",
    "classify_phase",
    "detect_bifurcation_betas",
    "entanglement",
    "entanglement_bounds",
    "entanglement_detail",
    "flat_leaf",
    "oriented",
    "xi",
    "xi_convexity_certificate",
    "xi_many",
    "xi_second_derivative",
]
