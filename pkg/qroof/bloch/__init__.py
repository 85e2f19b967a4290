from .entropy import binary_entropy, log_base, matrix_entropy, radial_entropy, von_neumann_entropy
from .minkowski import (
    ETA,
    PAULI,
    TAU_PURE,
    InvalidState,
    MinkowskiVector,
    PureState,
    State,
    det4,
    fibonacci_ball,
    fibonacci_sphere,
    minkowski_dot,
)

__all__ = [
    "ETA",
    "PAULI",
    "TAU_PURE",
    "InvalidState",
    "MinkowskiVector",
    "PureState",
    "State",
    "binary_entropy",
    "det4",
    "fibonacci_ball",
    "fibonacci_sphere",
    "log_base",
    "matrix_entropy",
    "minkowski_dot",
    "radial_entropy",
    "von_neumann_entropy",
]
