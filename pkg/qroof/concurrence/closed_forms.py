import math
from typing import Sequence, Tuple

import numpy as np

from qroof.bloch import State, det4
from qroof.channel import AxialParams, axial
from qroof.utils import QRoofError

BIFURCATION_TOL = 1e-9


class NotAtBifurcation(QRoofError):
    pass


def unital_concurrence(lambdas: Sequence[float], s: State) -> float:
    lam_sq = np.asarray(lambdas, dtype=float) ** 2
    w = float(np.max(lam_sq))
    x = s.bloch
    value = (1.0 - w) + float(np.sum((w - lam_sq) * x * x))
    return math.sqrt(max(value, 0.0))


def kraus2_concurrence(u: float, v: float, s: State) -> float:
    if math.cos(u) ** 2 < math.cos(v) ** 2:
        u, v = v, u
    _, y, z = s.bloch
    value = y * y * (math.cos(u) ** 2 - math.cos(v) ** 2) + (
        z * math.cos(u) * math.sin(v) - math.cos(v) * math.sin(u)
    ) ** 2
    return math.sqrt(max(value, 0.0))


def axial_concurrence(p: AxialParams, s: State) -> float:
    image = axial(p).apply(s.v)
    value = 4.0 * (det4(image) - p.w * det4(s.v))
    return math.sqrt(max(value, 0.0))


def amplitude_damping_concurrence(alpha: float, s: State) -> float:
    return (1.0 + float(s.bloch[2])) * math.sqrt(alpha * (1.0 - alpha))


def apex_z0(p: AxialParams) -> float:
    """Height of the apex on the z-axis where the leaves meet, for beta below beta_c."""
    a = math.sqrt(p.alpha * (1.0 - p.alpha))
    g = math.sqrt(p.gamma * (1.0 - p.gamma))
    if g == a:
        return math.inf
    return (g + a) / (g - a)


def linear_concurrence_check(p: AxialParams) -> Tuple[float, float]:
    """(slope, intercept) of the concurrence C = slope * z + intercept, valid at beta = beta_c."""
    if abs(p.beta - p.beta_c) > BIFURCATION_TOL:
        raise NotAtBifurcation(f"beta={p.beta:.12g} differs from beta_c={p.beta_c:.12g}")
    a = math.sqrt(p.alpha * (1.0 - p.alpha))
    g = math.sqrt(p.gamma * (1.0 - p.gamma))
    return a - g, a + g
