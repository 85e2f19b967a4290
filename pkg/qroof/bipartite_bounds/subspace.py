"""
Two-dimensional subspaces of a 2 x n product space.

Vectors of C^2 (x) C^n are flat arrays of length 2n indexed a * n + b, A being the first factor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

ORTHONORMAL_TOL = 1e-12


def partial_trace_b(rho: np.ndarray, n: int) -> np.ndarray:
    """Tr_B of an operator on C^2 (x) C^n, returning the 2x2 A-marginal."""
    return np.einsum("ajbj->ab", np.asarray(rho).reshape(2, n, 2, n))


@dataclass(frozen=True, eq=False)
class Subspace2:
    """Span of two orthonormal vectors; `basis` has shape (2, 2n), one vector per row."""

    basis: np.ndarray
    n: int

    def __post_init__(self):
        basis = np.array(self.basis, dtype=complex)
        if basis.shape != (2, 2 * self.n):
            raise ValueError(f"expected a basis of shape (2, {2 * self.n}), got {basis.shape}")
        gram = basis.conj() @ basis.T
        if np.max(np.abs(gram - np.eye(2))) > ORTHONORMAL_TOL:
            raise ValueError("subspace basis is not orthonormal")
        basis.flags.writeable = False
        object.__setattr__(self, "basis", basis)

    @staticmethod
    def from_spanning(v0: np.ndarray, v1: np.ndarray, n: int) -> Subspace2:
        """Orthonormalise two linearly independent vectors (v0 keeps its direction)."""
        q, r = np.linalg.qr(np.stack([np.asarray(v0, dtype=complex), np.asarray(v1, dtype=complex)], axis=1))
        if abs(r[1, 1]) < 1e-12:
            raise ValueError("spanning vectors are linearly dependent")
        # fix the phases so that v0 is a positive multiple of the first basis vector
        diag = np.diag(r)
        q = q * (diag / np.abs(diag))[None, :]
        return Subspace2(basis=q.T, n=n)

    @property
    def isometry(self) -> np.ndarray:
        """V with V|0> = basis[0], V|1> = basis[1]; shape (2n, 2)."""
        return self.basis.T

    def embed(self, rho: np.ndarray) -> np.ndarray:
        """Operator on the full space from 2x2 coordinates in the basis."""
        v = self.isometry
        return v @ np.asarray(rho, dtype=complex) @ v.conj().T

    def coordinates(self, psi: np.ndarray) -> np.ndarray:
        """Basis coordinates of a vector of the subspace."""
        return self.basis.conj() @ np.asarray(psi, dtype=complex)

    def marginal(self, rho: np.ndarray) -> np.ndarray:
        return partial_trace_b(self.embed(rho), self.n)

    def rotated(self, u: np.ndarray) -> Subspace2:
        """The same subspace with basis rows mixed by the 2x2 unitary u."""
        return Subspace2(basis=np.asarray(u) @ self.basis, n=self.n)


def _ket(bits: str) -> np.ndarray:
    v = np.zeros(2 ** len(bits), dtype=complex)
    v[int(bits, 2)] = 1.0
    return v


def ghz_state() -> np.ndarray:
    return (_ket("000") + _ket("111")) / math.sqrt(2.0)


def w_state() -> np.ndarray:
    return (_ket("001") + _ket("010") + _ket("100")) / math.sqrt(3.0)


def ghz_w_subspace() -> Subspace2:
    """Three qubits read as 2 x 4 with qubit a as the A factor; basis (GHZ, W)."""
    return Subspace2(basis=np.stack([ghz_state(), w_state()]), n=4)


def product_subspace(phi: np.ndarray) -> Subspace2:
    """Span of |0>|phi>, |1>|phi>."""
    phi = np.asarray(phi, dtype=complex)
    phi = phi / np.linalg.norm(phi)
    return Subspace2(basis=np.stack([np.kron([1.0, 0.0], phi), np.kron([0.0, 1.0], phi)]), n=phi.shape[0])


def separable_pair(a_overlap: float, b_overlap: float):
    """
    Two product vectors on C^2 (x) C^2 with |<A1|A2>|^2 = a_overlap and |<B1|B2>|^2 = b_overlap.

    :return: (psi1, psi2) as flat arrays.
    """
    for name, value in (("a_overlap", a_overlap), ("b_overlap", b_overlap)):
        if not 0.0 <= value <= 1.0:
            raise ValueError(f"{name} must lie in [0, 1], got {value}")
    a1 = np.array([1.0, 0.0])
    a2 = np.array([math.sqrt(a_overlap), math.sqrt(1.0 - a_overlap)])
    b1 = np.array([1.0, 0.0])
    b2 = np.array([math.sqrt(b_overlap), math.sqrt(1.0 - b_overlap)])
    return np.kron(a1, b1).astype(complex), np.kron(a2, b2).astype(complex)


def separable_pair_subspace(a_overlap: float, b_overlap: float) -> Subspace2:
    psi1, psi2 = separable_pair(a_overlap, b_overlap)
    return Subspace2.from_spanning(psi1, psi2, n=2)
