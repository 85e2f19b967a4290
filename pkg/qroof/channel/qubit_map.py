from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from qroof.bloch import PAULI, MinkowskiVector, State

AXIAL_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class QubitMap:
    """
    A trace-preserving linear map on qubit operators.

    The Bloch ball is pinched by `lam` and shifted by `t`:
    (x0, x) -> (x0, x0 * t + lam @ x).
    """

    lam: np.ndarray
    t: np.ndarray
    label: str = "general"

    def __post_init__(self):
        lam = np.array(self.lam, dtype=float)
        t = np.array(self.t, dtype=float).reshape(-1)
        if lam.shape != (3, 3) or t.shape != (3,):
            raise ValueError(f"a qubit map needs a 3x3 matrix and a 3-vector, got {lam.shape} and {t.shape}")
        lam.flags.writeable = False
        t.flags.writeable = False
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "t", t)

    def apply(self, v: MinkowskiVector) -> MinkowskiVector:
        return MinkowskiVector(v.x0, v.x0 * self.t + self.lam @ v.x)

    def apply_state(self, s: State) -> State:
        return State(self.apply(s.v))

    def apply_many(self, bloch: np.ndarray) -> np.ndarray:
        """Output Bloch vectors for a stack of input Bloch vectors of shape (n, 3)."""
        return np.asarray(bloch, dtype=float) @ self.lam.T + self.t

    def transfer_matrix(self) -> np.ndarray:
        transfer = np.eye(4)
        transfer[1:, 0] = self.t
        transfer[1:, 1:] = self.lam
        return transfer

    def apply_operator(self, op: np.ndarray) -> np.ndarray:
        """Action on an arbitrary (not necessarily Hermitian) 2x2 operator, by complex linearity."""
        coords = np.einsum("kij,ji->k", PAULI, np.asarray(op, dtype=complex))
        return 0.5 * np.einsum("k,kij->ij", self.transfer_matrix() @ coords, PAULI)

    def is_unital(self, tol: float = AXIAL_TOL) -> bool:
        return bool(np.linalg.norm(self.t) <= tol)

    def axial_params(self, tol: float = AXIAL_TOL) -> Optional[AxialParams]:
        """Recover (alpha, beta, gamma) when the map commutes with rotations about the z-axis."""
        lam = self.lam
        off_diagonal = lam - np.diag(np.diag(lam))
        if np.max(np.abs(off_diagonal)) > tol:
            return None
        if abs(lam[0, 0] - lam[1, 1]) > tol or np.max(np.abs(self.t[:2])) > tol:
            return None
        t3 = self.t[2]
        l3 = lam[2, 2]
        return AxialParams(
            alpha=(1.0 + l3 + t3) / 2.0,
            beta=abs(lam[0, 0]),
            gamma=(1.0 + l3 - t3) / 2.0,
        )

    def with_label(self, label: str) -> QubitMap:
        return replace(self, label=label)

    def __repr__(self) -> str:
        return f"QubitMap({self.label}, lam={self.lam.tolist()}, t={self.t.tolist()})"

    def to_dict(self):
        return {"label": self.label, "lambda": self.lam.tolist(), "t": self.t.tolist()}


@dataclass(frozen=True)
class AxialParams:
    alpha: float
    beta: float
    gamma: float

    @property
    def _cross(self) -> float:
        return math.sqrt(max(self.alpha * (1 - self.alpha) * self.gamma * (1 - self.gamma), 0.0))

    @property
    def beta_max_sq(self) -> float:
        return 1 + 2 * self.alpha * self.gamma - self.alpha - self.gamma + 2 * self._cross

    @property
    def beta_c_sq(self) -> float:
        return 1 + 2 * self.alpha * self.gamma - self.alpha - self.gamma - 2 * self._cross

    @property
    def beta_cp_sq(self) -> float:
        return self.alpha * self.gamma

    @property
    def beta_max(self) -> float:
        return math.sqrt(max(self.beta_max_sq, 0.0))

    @property
    def beta_c(self) -> float:
        return math.sqrt(max(self.beta_c_sq, 0.0))

    @property
    def w(self) -> float:
        return max(self.beta**2, self.beta_c_sq)

    def is_unital(self, tol: float = AXIAL_TOL) -> bool:
        return abs(self.alpha - self.gamma) <= tol

    def is_planar(self, tol: float = AXIAL_TOL) -> bool:
        return abs(self.alpha + self.gamma - 1) <= tol

    def to_map(self) -> QubitMap:
        return axial(self)


def apply(m: QubitMap, v: MinkowskiVector) -> MinkowskiVector:
    return m.apply(v)


def axial(p: AxialParams) -> QubitMap:
    return QubitMap(
        lam=np.diag([p.beta, p.beta, p.alpha + p.gamma - 1.0]),
        t=np.array([0.0, 0.0, p.alpha - p.gamma]),
        label=f"axial(alpha={p.alpha:g}, beta={p.beta:g}, gamma={p.gamma:g})",
    )


def unital(l1: float, l2: float, l3: float) -> QubitMap:
    return QubitMap(lam=np.diag([l1, l2, l3]), t=np.zeros(3), label=f"unital({l1:g}, {l2:g}, {l3:g})")


def identity() -> QubitMap:
    return unital(1.0, 1.0, 1.0).with_label("identity")


def kraus2(u: float, v: float) -> QubitMap:
    """
    Length-2 channel in normal form, lam = diag(cos u, cos v, cos u cos v), t = (0, 0, sin u sin v).

    When |cos u| < |cos v| the angles are exchanged and the label records it. This agrees with
    ordering by cos u >= cos v when both cosines are non-negative; with a negative cosine only
    the squared order keeps the concurrence form positive.
    """
    label = f"kraus2(u={u:g}, v={v:g})"
    if math.cos(u) ** 2 < math.cos(v) ** 2:
        u, v = v, u
        label += " swapped"
    return QubitMap(
        lam=np.diag([math.cos(u), math.cos(v), math.cos(u) * math.cos(v)]),
        t=np.array([0.0, 0.0, math.sin(u) * math.sin(v)]),
        label=label,
    )


def depolarizing(p: float) -> QubitMap:
    return unital(p, p, p).with_label(f"depolarizing({p:g})")


def phase_damping(p: float) -> QubitMap:
    return unital(p, p, 1.0).with_label(f"phase_damping({p:g})")


def amplitude_damping(alpha: float) -> QubitMap:
    if alpha < 0:
        raise ValueError(f"amplitude damping parameter must be non-negative, got {alpha}")
    return axial(AxialParams(alpha=alpha, beta=math.sqrt(alpha), gamma=1.0)).with_label(
        f"amplitude_damping({alpha:g})",
    )
