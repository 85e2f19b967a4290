from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from qroof.bloch import fibonacci_sphere
from qroof.channel.qubit_map import AxialParams, QubitMap
from qroof.utils import QRoofError

logger = logging.getLogger(__name__)

CLOSED_FORM_SLACK = 1e-12
CHOI_LIMIT = 1e-9


class NotPositive(QRoofError):
    """The map sends some state outside the Bloch ball; the message names the violated condition."""

    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


class PositivityTag(str, Enum):
    NOT_POSITIVE = "NotPositive"
    POSITIVE = "Positive"
    COMPLETELY_POSITIVE = "CompletelyPositive"


@dataclass(frozen=True)
class PositivityClass:
    tag: PositivityTag
    reason: Optional[str] = None

    @property
    def is_positive(self) -> bool:
        return self.tag != PositivityTag.NOT_POSITIVE

    @property
    def is_completely_positive(self) -> bool:
        return self.tag == PositivityTag.COMPLETELY_POSITIVE

    def __str__(self) -> str:
        return self.tag.value if self.reason is None else f"{self.tag.value} ({self.reason})"


_NOT_CP = "Choi matrix is not positive semidefinite"


def classify_axial(p: AxialParams) -> PositivityClass:
    if not -CLOSED_FORM_SLACK <= p.alpha <= 1 + CLOSED_FORM_SLACK:
        return PositivityClass(PositivityTag.NOT_POSITIVE, "alpha outside [0, 1]")
    if not -CLOSED_FORM_SLACK <= p.gamma <= 1 + CLOSED_FORM_SLACK:
        return PositivityClass(PositivityTag.NOT_POSITIVE, "gamma outside [0, 1]")
    if p.beta < 0:
        return PositivityClass(PositivityTag.NOT_POSITIVE, "beta is negative")
    if p.beta**2 > p.beta_max_sq + CLOSED_FORM_SLACK:
        return PositivityClass(PositivityTag.NOT_POSITIVE, f"beta exceeds beta_max={p.beta_max:.6f}")
    if p.beta**2 <= p.beta_cp_sq + CLOSED_FORM_SLACK:
        return PositivityClass(PositivityTag.COMPLETELY_POSITIVE)
    return PositivityClass(PositivityTag.POSITIVE, f"beta^2 exceeds alpha*gamma={p.beta_cp_sq:.6f}")


def choi_matrix(m: QubitMap) -> np.ndarray:
    """J = sum_ij |i><j| (x) Phi(|i><j|), a 4x4 Hermitian matrix."""
    choi = np.zeros((4, 4), dtype=complex)
    for i in range(2):
        for j in range(2):
            unit = np.zeros((2, 2), dtype=complex)
            unit[i, j] = 1.0
            choi += np.kron(unit, m.apply_operator(unit))
    return choi


def choi_is_completely_positive(m: QubitMap, limit: float = CHOI_LIMIT) -> bool:
    evals = np.linalg.eigvalsh(choi_matrix(m))
    return bool(evals[0] >= -abs(limit))


def sampled_min_det(m: QubitMap, n: int = 10_000) -> float:
    """Smallest 4*det of the image of a pure state, over a Fibonacci grid on the sphere."""
    out = m.apply_many(fibonacci_sphere(n))
    return float(np.min(1.0 - np.sum(out * out, axis=1)))


def classify_positivity_general(m: QubitMap, audit_points: int = 2_000) -> PositivityClass:
    """
    Eigen-flow positivity test: the flow of eta*Q0 must be real and Q_w must be positive
    semidefinite at the critical value. Complete positivity is read off the Choi matrix.

    The outcome is cross-checked against pure states sampled on the sphere; a disagreement
    is logged, never overridden.
    """
    from qroof.concurrence.form import TAU_PSD, NonRealEigenvalues, eigen_flow, locate_critical_w, min_eigenvalue
    from qroof.concurrence.form import q_matrix

    result: PositivityClass
    try:
        flow = eigen_flow(m)
    except NonRealEigenvalues:
        result = PositivityClass(PositivityTag.NOT_POSITIVE, "eta*Q0 has non-real eigenvalues")
    else:
        q0 = q_matrix(m)
        w0 = locate_critical_w(q0, flow)
        if w0 < -TAU_PSD:
            result = PositivityClass(PositivityTag.NOT_POSITIVE, f"critical w={w0:.6g} is negative")
        elif min_eigenvalue(q0, w0) < -TAU_PSD:
            result = PositivityClass(PositivityTag.NOT_POSITIVE, "Q_w2 is not positive semidefinite")
        elif choi_is_completely_positive(m):
            result = PositivityClass(PositivityTag.COMPLETELY_POSITIVE)
        else:
            result = PositivityClass(PositivityTag.POSITIVE, _NOT_CP)

    if audit_points > 0:
        sampled = sampled_min_det(m, audit_points)
        if result.is_positive and sampled < -TAU_PSD:
            logger.warning(
                "positivity disagreement for %r: eigen-flow test says positive, sampled 4*det=%.3g",
                m,
                sampled,
            )
        elif not result.is_positive and sampled >= 0:
            logger.debug("no sampled violation for %r although %s", m, result.reason)
    return result


def classify_positivity(m: QubitMap) -> PositivityClass:
    params = m.axial_params()
    if params is not None:
        return classify_axial(params)
    return classify_positivity_general(m)


def require_positive(m: QubitMap) -> PositivityClass:
    positivity = classify_positivity(m)
    if not positivity.is_positive:
        raise NotPositive(positivity.reason or "map is not positive")
    return positivity
