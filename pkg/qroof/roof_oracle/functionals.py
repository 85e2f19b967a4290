"""Pure-state functionals g whose convex roof the oracle minimises."""

from typing import Callable

import numpy as np

from qroof.bloch import radial_entropy
from qroof.channel import QubitMap


class PureStateFunctional:
    """Maps a stack of unit Bloch vectors of shape (n, 3) to values of shape (n,)."""

    name: str = "functional"

    def __call__(self, directions: np.ndarray) -> np.ndarray:
        raise NotImplementedError


class ConcurrenceFunctional(PureStateFunctional):
    """2 sqrt(det Phi(pi)) = sqrt(1 - |Phi(x)|^2) on pure inputs."""

    def __init__(self, m: QubitMap):
        self.m = m
        self.name = "concurrence"

    def __call__(self, directions: np.ndarray) -> np.ndarray:
        out = self.m.apply_many(directions)
        return np.sqrt(np.clip(1.0 - np.einsum("ni,ni->n", out, out), 0.0, None))


class EntropyFunctional(PureStateFunctional):
    """Von Neumann entropy of the output, S(Phi(pi))."""

    def __init__(self, m: QubitMap, base: float = 2.0):
        self.m = m
        self.base = base
        self.name = "entropy"

    def __call__(self, directions: np.ndarray) -> np.ndarray:
        out = self.m.apply_many(directions)
        return np.asarray(radial_entropy(np.minimum(np.linalg.norm(out, axis=1), 1.0), self.base))


class FunctionalFromCallable(PureStateFunctional):
    def __init__(self, fn: Callable[[np.ndarray], float], name: str = "custom"):
        self.fn = fn
        self.name = name

    def __call__(self, directions: np.ndarray) -> np.ndarray:
        return np.array([self.fn(d) for d in np.atleast_2d(directions)], dtype=float)


def concurrence_functional(m: QubitMap) -> PureStateFunctional:
    return ConcurrenceFunctional(m)


def entropy_functional(m: QubitMap, base: float = 2.0) -> PureStateFunctional:
    return EntropyFunctional(m, base)
