"""
Lower bounds for maps with output rank above two.

For a map Phi on m x m matrices and a number w making e2(Phi(rho)) - w e2(rho) a positive
semidefinite form, 2 sqrt(e2(Phi(rho)) - w e2(rho)) is convex and agrees with
2 sqrt(e2(Phi(pi))) on pure states, so it bounds the Phi-concurrence from below.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from qroof.bloch import PAULI
from qroof.concurrence import TAU_PSD, NegativeForm
from qroof.entanglement import DomainError
from qroof.roof_oracle import PureStateFunctional


def e2(rho: np.ndarray) -> float:
    """Second elementary symmetric polynomial of the eigenvalues, ((Tr rho)^2 - Tr rho^2) / 2."""
    rho = np.asarray(rho, dtype=complex)
    return float(np.real(np.trace(rho) ** 2 - np.trace(rho @ rho)) / 2.0)


def _e2_many(rhos: np.ndarray) -> np.ndarray:
    traces = np.einsum("nii->n", rhos)
    squares = np.einsum("nij,nji->n", rhos, rhos)
    return np.real(traces**2 - squares) / 2.0


@dataclass(frozen=True, eq=False)
class ExplicitMap:
    """A linear map on dim x dim matrices, stored as its matrix on row-major vectorised operators."""

    dim: int
    superoperator: np.ndarray
    label: str
    default_w: Optional[float] = None

    @staticmethod
    def from_function(
        fn: Callable[[np.ndarray], np.ndarray],
        dim: int,
        label: str,
        default_w: Optional[float] = None,
    ) -> ExplicitMap:
        columns = []
        for k in range(dim * dim):
            unit = np.zeros(dim * dim, dtype=complex)
            unit[k] = 1.0
            columns.append(np.asarray(fn(unit.reshape(dim, dim)), dtype=complex).reshape(-1))
        return ExplicitMap(dim=dim, superoperator=np.stack(columns, axis=1), label=label, default_w=default_w)

    def __call__(self, rho: np.ndarray) -> np.ndarray:
        """Apply to one matrix or a stack of shape (n, dim, dim)."""
        rho = np.asarray(rho, dtype=complex)
        flat = rho.reshape(rho.shape[:-2] + (self.dim * self.dim,))
        return (flat @ self.superoperator.T).reshape(rho.shape)

    def is_trace_preserving(self, tol: float = 1e-12) -> bool:
        # Tr Phi(E_k) = Tr E_k for every matrix unit
        traces = self.superoperator.reshape(self.dim, self.dim, -1).trace(axis1=0, axis2=1)
        return bool(np.max(np.abs(traces - np.eye(self.dim).reshape(-1))) <= tol)


def diagonal_map(dim: int) -> ExplicitMap:
    """Cancels the off-diagonal elements; w = 1 gives 2 (sum_{j<k} |x_jk|^2)^(1/2)."""
    return ExplicitMap.from_function(lambda x: np.diag(np.diag(x)), dim, f"diagonal({dim})", default_w=1.0)


def choi_w(mu: float) -> float:
    return (1.0 - mu + mu * mu) / (1.0 + mu) ** 2


def choi_map(mu: float) -> ExplicitMap:
    """The indecomposable 3 x 3 Choi map family, positive and trace-preserving for mu >= 1."""
    if mu < 1.0:
        raise DomainError(f"the Choi map needs mu >= 1, got {mu}")

    def fn(x: np.ndarray) -> np.ndarray:
        out = -x.astype(complex)
        out[0, 0] = x[0, 0] + mu * x[2, 2]
        out[1, 1] = x[1, 1] + mu * x[0, 0]
        out[2, 2] = x[2, 2] + mu * x[1, 1]
        return out / (1.0 + mu)

    return ExplicitMap.from_function(fn, 3, f"choi(mu={mu:g})", default_w=choi_w(mu))


def e2_lower_bound(phi: ExplicitMap, rho: np.ndarray, w: Optional[float] = None) -> float:
    """2 sqrt(e2(Phi(rho)) - w e2(rho)); `w` defaults to the one attached to the map."""
    if w is None:
        if phi.default_w is None:
            raise ValueError(f"{phi.label} carries no default w; pass one explicitly")
        w = phi.default_w
    value = e2(phi(rho)) - w * e2(rho)
    if value < -TAU_PSD:
        raise NegativeForm(f"e2 form of {phi.label} is negative ({value:.3g}) at w={w:g}")
    return 2.0 * math.sqrt(max(value, 0.0))


def choi_bound(mu: float, rho: np.ndarray) -> float:
    """Closed form of the Choi-map bound: 4 mu / (1 + mu)^2 [(Tr rho)^2 + (mu - 1) sum_{j<k} |x_jk|^2]."""
    rho = np.asarray(rho, dtype=complex)
    off = float(np.sum(np.abs(np.triu(rho, k=1)) ** 2))
    trace = float(np.real(np.trace(rho)))
    value = 4.0 * mu / (1.0 + mu) ** 2 * (trace * trace + (mu - 1.0) * off)
    return math.sqrt(max(value, 0.0))


class SubspaceE2Functional(PureStateFunctional):
    """2 sqrt(e2(Phi(pi))) for pure states pi of a two-dimensional subspace, indexed by Bloch direction."""

    def __init__(self, phi: ExplicitMap, basis: np.ndarray):
        basis = np.asarray(basis, dtype=complex)
        if basis.shape != (2, phi.dim):
            raise ValueError(f"expected a basis of shape (2, {phi.dim}), got {basis.shape}")
        self.phi = phi
        self.isometry = basis.T
        self.name = f"e2[{phi.label}]"

    def embed_many(self, directions: np.ndarray) -> np.ndarray:
        coords = np.hstack([np.ones((directions.shape[0], 1)), directions])
        qubit = 0.5 * np.einsum("nk,kij->nij", coords, PAULI)
        return np.einsum("ai,nij,bj->nab", self.isometry, qubit, self.isometry.conj())

    def __call__(self, directions: np.ndarray) -> np.ndarray:
        outputs = self.phi(self.embed_many(np.atleast_2d(directions)))
        return 2.0 * np.sqrt(np.clip(_e2_many(outputs), 0.0, None))


def restrict_to_subspace(phi: ExplicitMap, basis: np.ndarray) -> SubspaceE2Functional:
    return SubspaceE2Functional(phi, basis)
