from .budget import DEFAULT_SEED, Budget, RoofOracleConfig, RoofOracleModule
from .decomposition import Decomposition, PureInput, RoofResult, chord_split, length2_family
from .functionals import (
    ConcurrenceFunctional,
    EntropyFunctional,
    FunctionalFromCallable,
    PureStateFunctional,
    concurrence_functional,
    entropy_functional,
)
from .oracle import TAU_FLAT, RoofOracle, leaf_scan, minimize_roof

__all__ = [
    "DEFAULT_SEED",
    "TAU_FLAT",
    "Budget",
    "ConcurrenceFunctional",
    "Decomposition",
    "EntropyFunctional",
    "FunctionalFromCallable",
    "PureInput",
    "PureStateFunctional",
    "RoofOracle",
    "RoofOracleConfig",
    "RoofOracleModule",
    "RoofResult",
    "chord_split",
    "concurrence_functional",
    "entropy_functional",
    "leaf_scan",
    "length2_family",
    "minimize_roof",
]
