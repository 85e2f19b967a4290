from typing import Union

import numpy as np
from scipy.special import entr

from qroof.bloch.minkowski import State

Number = Union[float, np.ndarray]


def log_base(base: Union[str, float]) -> float:
    """Accepts 2, "2", "e" or any positive float; returns the numeric base."""
    if isinstance(base, str):
        if base == "e":
            return float(np.e)
        base = float(base)
    if not base > 1.0:
        raise ValueError(f"logarithm base must exceed 1, got {base}")
    return float(base)


def binary_entropy(p: Number, base: float = 2.0) -> Number:
    """H(p, 1-p); `entr` carries the 0 log 0 = 0 convention."""
    p = np.clip(p, 0.0, 1.0)
    value = (entr(p) + entr(1.0 - p)) / np.log(base)
    return float(value) if np.ndim(value) == 0 else value


def radial_entropy(r: Number, base: float = 2.0) -> Number:
    """Entropy of a qubit state with Bloch radius r."""
    return binary_entropy((1.0 - np.asarray(r, dtype=float)) / 2.0, base)


def von_neumann_entropy(s: State, base: float = 2.0) -> float:
    return float(radial_entropy(min(s.radius, 1.0), base))


def matrix_entropy(rho: np.ndarray, base: float = 2.0) -> float:
    evs = np.linalg.eigvalsh(np.asarray(rho, dtype=complex))
    evs = np.where(evs > 0, evs, 0.0)
    return float(np.sum(entr(evs)) / np.log(base))
