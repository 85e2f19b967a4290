from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Sequence, Tuple, Union

import numpy as np
from scipy.optimize import minimize_scalar

from qroof.bloch import ETA, MinkowskiVector, State
from qroof.channel import NotPositive, QubitMap
from qroof.utils import QRoofError

logger = logging.getLogger(__name__)

TAU_IMAG = 1e-8
TAU_PSD = 1e-9
KERNEL_TOL = 1e-8
POLISH_WINDOW = 1e-6

Flow = Tuple[float, float, float, float]


class NonRealEigenvalues(QRoofError):
    pass


class NegativeForm(QRoofError):
    pass


def q0_matrix(lam: np.ndarray, t: np.ndarray) -> np.ndarray:
    """Q0 = T^T eta T for the transfer matrix T; v.Q0.v is the Minkowski square of the image of v."""
    q0 = np.empty((4, 4))
    t_lam = t @ lam
    q0[0, 0] = 1.0 - t @ t
    q0[0, 1:] = -t_lam
    q0[1:, 0] = -t_lam
    q0[1:, 1:] = -lam.T @ lam
    return q0


def q_matrix(m: QubitMap, w: float = 0.0) -> np.ndarray:
    return q0_matrix(m.lam, m.t) - w * ETA


def min_eigenvalue(q0: np.ndarray, w: float) -> float:
    return float(np.linalg.eigvalsh(q0 - w * ETA)[0])


def _imag_tolerance(a: np.ndarray) -> np.ndarray:
    # a defective (Jordan) eigenvalue splits by about sqrt(eps * |a|) under rounding
    norms = np.linalg.norm(a, axis=(-2, -1))
    return np.maximum(TAU_IMAG, 8.0 * np.sqrt(np.finfo(float).eps * np.maximum(norms, 1.0)))


def eigen_flow(m: QubitMap) -> Flow:
    """The four eigenvalues of eta*Q0, real and sorted descending."""
    a = ETA @ q_matrix(m)
    evs = np.linalg.eigvals(a)
    worst = float(np.max(np.abs(evs.imag)))
    if worst > _imag_tolerance(a):
        raise NonRealEigenvalues(f"eta*Q0 of {m!r} has eigenvalues with imaginary part {worst:.3g}")
    w = np.sort(evs.real)[::-1]
    return (float(w[0]), float(w[1]), float(w[2]), float(w[3]))


def eigen_flow_many(lams: np.ndarray, ts: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """
    Eigen flows of a stack of maps.

    :param lams: shape (n, 3, 3).
    :param ts: shape (n, 3).
    :return: flows of shape (n, 4) sorted descending, and a boolean mask marking the rows whose
        eigenvalues are real. Non-real rows keep their real parts.
    """
    lams = np.asarray(lams, dtype=float)
    ts = np.asarray(ts, dtype=float)
    n = lams.shape[0]
    q0 = np.empty((n, 4, 4))
    t_lam = np.einsum("ni,nij->nj", ts, lams)
    q0[:, 0, 0] = 1.0 - np.einsum("ni,ni->n", ts, ts)
    q0[:, 0, 1:] = -t_lam
    q0[:, 1:, 0] = -t_lam
    q0[:, 1:, 1:] = -np.einsum("nki,nkj->nij", lams, lams)
    a = ETA @ q0
    evs = np.linalg.eigvals(a)
    real = np.max(np.abs(evs.imag), axis=1) <= _imag_tolerance(a)
    flows = np.sort(evs.real, axis=1)[:, ::-1]
    return flows, real


def locate_critical_w(q0: np.ndarray, flow: Sequence[float]) -> float:
    """
    w2 of the flow, polished when rounding leaves Q_w2 below -TAU_PSD.

    At a defective eigenvalue the computed w2 is off by ~1e-8; the critical value is then the
    maximiser of the smallest eigenvalue of Q_w (a concave function of w) in a small window.
    """
    w2 = float(flow[1])
    if min_eigenvalue(q0, w2) >= -TAU_PSD:
        return w2
    res = minimize_scalar(
        lambda w: -min_eigenvalue(q0, w),
        bounds=(w2 - POLISH_WINDOW, w2 + POLISH_WINDOW),
        method="bounded",
        options={"xatol": 1e-13},
    )
    logger.debug("critical w polished from %.12g to %.12g", w2, res.x)
    return float(res.x)


def critical_w(m: QubitMap) -> float:
    return locate_critical_w(q_matrix(m), eigen_flow(m))


def _normalized_kernel_vector(n: np.ndarray) -> np.ndarray:
    return n / n[int(np.argmax(np.abs(n)))]


@dataclass(frozen=True, eq=False)
class ConcurrenceForm:
    """
    The positive semidefinite form Q_w0 whose square root is the concurrence.

    `kernel_basis` holds orthonormal rows spanning Ker Q_w0; `kernel` is its representative,
    scaled so that its largest component is 1.
    """

    q0: np.ndarray
    w_flow: Flow
    w0: float
    kernel: MinkowskiVector
    kernel_basis: np.ndarray

    @property
    def q_w0(self) -> np.ndarray:
        return self.q0 - self.w0 * ETA

    @property
    def kernel_dimension(self) -> int:
        return int(self.kernel_basis.shape[0])

    def square(self, v: Union[State, MinkowskiVector]) -> float:
        vec = (v.v if isinstance(v, State) else v).as_array()
        value = float(vec @ self.q_w0 @ vec)
        if value < -TAU_PSD * float(vec @ vec):
            raise NegativeForm(f"concurrence form is {value:.3g} at {vec}")
        return max(value, 0.0)

    def evaluate(self, v: Union[State, MinkowskiVector]) -> float:
        return math.sqrt(self.square(v))

    def evaluate_many(self, bloch: np.ndarray) -> np.ndarray:
        """Concurrence at a stack of Bloch vectors of shape (n, 3)."""
        bloch = np.atleast_2d(np.asarray(bloch, dtype=float))
        vecs = np.hstack([np.ones((bloch.shape[0], 1)), bloch])
        values = np.einsum("ni,ij,nj->n", vecs, self.q_w0, vecs)
        floor = -TAU_PSD * np.einsum("ni,ni->n", vecs, vecs)
        if np.any(values < floor):
            raise NegativeForm(f"concurrence form reaches {float(np.min(values)):.3g}")
        return np.sqrt(np.clip(values, 0.0, None))

    def to_dict(self):
        return {
            "w_flow": list(self.w_flow),
            "w0": self.w0,
            "kernel": self.kernel.as_array().tolist(),
            "kernel_dimension": self.kernel_dimension,
        }


def kernel_at(q: np.ndarray, tol: float = KERNEL_TOL) -> np.ndarray:
    """Orthonormal rows spanning the numerical kernel of a symmetric matrix; never empty."""
    evals, evecs = np.linalg.eigh(q)
    mask = np.abs(evals) <= tol
    if not np.any(mask):
        mask = np.abs(evals) == np.min(np.abs(evals))
    return evecs[:, mask].T


def concurrence_form(m: QubitMap) -> ConcurrenceForm:
    try:
        flow = eigen_flow(m)
    except NonRealEigenvalues:
        raise NotPositive("eta*Q0 has non-real eigenvalues")
    q0 = q_matrix(m)
    p = m.axial_params()
    # axial flows are degenerate at beta = beta_c, where the eigensolver loses half the digits
    w0 = p.w if p is not None else locate_critical_w(q0, flow)
    if min_eigenvalue(q0, w0) < -TAU_PSD:
        raise NotPositive("Q_w2 is not positive semidefinite")
    basis = kernel_at(q0 - w0 * ETA)
    if basis.shape[0] > 1:
        # prefer a representative without time component when the kernel has one
        from scipy.linalg import null_space

        spatial = null_space(basis[:, :1].T)
        representative = basis.T @ spatial[:, 0] if spatial.size else basis[0]
    else:
        representative = basis[0]
    kernel = MinkowskiVector.from_array(_normalized_kernel_vector(representative))
    return ConcurrenceForm(q0=q0, w_flow=flow, w0=w0, kernel=kernel, kernel_basis=basis)


def concurrence(m: QubitMap, s: State) -> float:
    return concurrence_form(m).evaluate(s)
