from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from qroof.bloch import PAULI
from qroof.bipartite_bounds.subspace import Subspace2, partial_trace_b
from qroof.channel import QubitMap
from qroof.concurrence import critical_w


@dataclass(frozen=True)
class SubspaceInvariant:
    """The w for which C^2 = 4 (det rho^A - w det rho) on the subspace."""

    w: float

    def to_dict(self):
        return {"w": self.w}


def induced_map(sub: Subspace2) -> QubitMap:
    """
    The qubit map rho -> Tr_B(V rho V^dagger), rho in basis coordinates of `sub`.

    Output eigenvalues are those of the A-marginal of the embedded state.
    """
    # transfer[i, j] = tr(sigma_i Phi(sigma_j)) / 2
    images = np.stack([sub.marginal(PAULI[j]) for j in range(4)])
    transfer = np.real(np.einsum("iab,jba->ij", PAULI, images)) / 2.0
    return QubitMap(lam=transfer[1:, 1:], t=transfer[1:, 0], label=f"induced(n={sub.n})")


def subspace_w(sub: Subspace2) -> SubspaceInvariant:
    return SubspaceInvariant(w=critical_w(induced_map(sub)))


def _det2(m: np.ndarray) -> float:
    return float(np.real(m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]))


def rank2_concurrence(sub: Subspace2, rho: np.ndarray, w: Optional[float] = None) -> float:
    """
    sqrt(4 (det rho^A - w det rho)) for a state given by 2x2 coordinates on `sub`.

    `w` defaults to the subspace invariant; pass it when evaluating many states of one subspace.
    """
    rho = np.asarray(rho, dtype=complex)
    if w is None:
        w = subspace_w(sub).w
    value = 4.0 * (_det2(sub.marginal(rho)) - w * _det2(rho))
    return math.sqrt(max(value, 0.0))


def bilinear_q(rho1: np.ndarray, rho2: np.ndarray, w: float, n: int) -> float:
    """
    Polarisation of C^2 on operators of C^2 (x) C^n:
    2 (1 - w) Tr rho1 Tr rho2 + 2 (w Tr rho1 rho2 - Tr rho1^A rho2^A).
    """
    rho1 = np.asarray(rho1, dtype=complex)
    rho2 = np.asarray(rho2, dtype=complex)
    a1 = partial_trace_b(rho1, n)
    a2 = partial_trace_b(rho2, n)
    value = 2.0 * (1.0 - w) * np.trace(rho1) * np.trace(rho2) + 2.0 * (
        w * np.trace(rho1 @ rho2) - np.trace(a1 @ a2)
    )
    return float(np.real(value))
