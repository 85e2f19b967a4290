"""
Phase structure of axial channels.

Below beta_c the concurrence foliation is a cone with apex on the z-axis. The entanglement
entropy stays flat down to beta_1; between beta_2 and beta_1 some states near the apex need
three members, and below beta_2 the optimal decompositions are cones again. The formulas are
written for the orientation where (alpha - gamma)(alpha + gamma - 1) > 0; the opposite case
is the same picture turned upside down, alpha and gamma exchanged.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, List, Optional, Tuple

import numpy as np
from scipy.optimize import brentq

from qroof.bloch import radial_entropy
from qroof.channel import AxialParams, NotPositive, classify_axial
from qroof.utils import QRoofError

logger = logging.getLogger(__name__)

DEGENERACY_TOL = 1e-12
ORDERING_TOL = 1e-9
SERIES_X = 1e-4
EDGE = 1e-12
DETECTOR_STEP = 0.05
DETECTOR_GRID = 200
RICHARDSON_TOL = 1e-6


class PhaseLabel(str, Enum):
    IA = "Ia"
    IB = "Ib"
    II = "II"
    III = "III"
    DEGENERATE_UNITAL = "DegenerateUnital"
    DEGENERATE_PLANAR = "DegeneratePlanar"


class DegenerateFamily(QRoofError):
    pass


@dataclass(frozen=True)
class BifurcationBetas:
    beta1: float
    beta2: float
    beta_c: float
    beta_max: float
    orientation_flipped: bool

    def to_dict(self):
        return {
            "beta1": self.beta1,
            "beta2": self.beta2,
            "beta_c": self.beta_c,
            "beta_max": self.beta_max,
            "orientation_flipped": self.orientation_flipped,
        }


def oriented(alpha: float, gamma: float) -> Tuple[float, float, bool]:
    """(alpha, gamma) in the orientation of the phase formulas, and whether a swap was needed."""
    if abs(alpha - gamma) <= DEGENERACY_TOL:
        raise DegenerateFamily(f"alpha = gamma = {alpha:g}: the channel is unital")
    if abs(alpha + gamma - 1.0) <= DEGENERACY_TOL:
        raise DegenerateFamily(f"alpha + gamma = 1 at alpha={alpha:g}: the range of the channel is planar")
    if (alpha - gamma) * (alpha + gamma - 1.0) < 0:
        return gamma, alpha, True
    return alpha, gamma, False


def _beta1_sq(x: float, y: float) -> float:
    if abs(x) < SERIES_X:
        return 0.75 * (1.0 - math.sqrt(max(1.0 - 2.0 * y * y / 3.0, 0.0))) + x * y / 2.0
    x = max(min(x, 1.0 - EDGE), -1.0 + EDGE)
    at = math.atanh(x)
    denominator = 2.0 * (x + (x * x - 1.0) * at)
    inner = (1.0 - x * x) * at * (x**3 - x * y * y - (x * x - 1.0) * y * y * at)
    bracket = x * x + x * y + (x * x - 1.0) * y * at - math.sqrt(max(inner, 0.0))
    return x / denominator * bracket


def _beta2_sq(x: float, y: float) -> float:
    x = max(min(x, 1.0 - EDGE), -1.0 + EDGE)
    y = max(min(y, 1.0 - EDGE), -1.0 + EDGE)
    offset = -((1.0 + x) * math.log1p(x) + (1.0 - x) * math.log1p(-x))
    if abs(y) < SERIES_X:
        return -offset / 4.0
    numerator = (1.0 + x) * math.log1p(-y) + (1.0 - x) * math.log1p(y) + offset
    return y * numerator / (2.0 * (math.log1p(-y) - math.log1p(y)))


def check_beta_ordering(betas: BifurcationBetas, tol: float = ORDERING_TOL) -> bool:
    """True when beta_2 <= beta_1 <= beta_c <= beta_max; a violation is logged, not raised."""
    ordered = (
        betas.beta2 <= betas.beta1 + tol
        and betas.beta1 <= betas.beta_c + tol
        and betas.beta_c <= betas.beta_max + tol
    )
    if not ordered:
        logger.warning(
            "bifurcation betas out of order: beta2=%.9g beta1=%.9g beta_c=%.9g beta_max=%.9g",
            betas.beta2,
            betas.beta1,
            betas.beta_c,
            betas.beta_max,
        )
    return ordered


def bifurcation_betas(alpha: float, gamma: float) -> BifurcationBetas:
    a, g, flipped = oriented(alpha, gamma)
    x, y = 2.0 * a - 1.0, 2.0 * g - 1.0
    p = AxialParams(alpha=alpha, beta=0.0, gamma=gamma)
    betas = BifurcationBetas(
        beta1=math.sqrt(max(_beta1_sq(x, y), 0.0)),
        beta2=math.sqrt(max(_beta2_sq(x, y), 0.0)),
        beta_c=p.beta_c,
        beta_max=p.beta_max,
        orientation_flipped=flipped,
    )
    check_beta_ordering(betas)
    return betas


def classify_phase(p: AxialParams, betas: Optional[BifurcationBetas] = None) -> PhaseLabel:
    positivity = classify_axial(p)
    if not positivity.is_positive:
        raise NotPositive(positivity.reason or "map is not positive")
    if p.is_unital():
        return PhaseLabel.DEGENERATE_UNITAL
    if p.is_planar():
        return PhaseLabel.DEGENERATE_PLANAR
    betas = betas or bifurcation_betas(p.alpha, p.gamma)
    if p.beta >= betas.beta_c - DEGENERACY_TOL:
        return PhaseLabel.IA
    if p.beta >= betas.beta1:
        return PhaseLabel.IB
    if p.beta > betas.beta2:
        return PhaseLabel.II
    return PhaseLabel.III


def _axis_entropy(alpha: float, beta: float, gamma: float) -> Callable[[float], float]:
    """Entropy (nats) of the output of the pure state at polar cosine c, in the y = 0 plane."""
    t3 = alpha - gamma
    l3 = alpha + gamma - 1.0

    def s(c: float) -> float:
        r2 = beta * beta * (1.0 - c * c) + (t3 + l3 * c) ** 2
        return float(radial_entropy(min(math.sqrt(max(r2, 0.0)), 1.0), math.e))

    return s


def _north_coefficient(s: Callable[[float], float], h: float) -> float:
    # pole plus a horizontal pair against the horizontal chord through the same axis point;
    # the difference starts at order (1 - cos h)^2
    c = math.cos(h)
    eps = 1.0 - c
    diff = s(1.0) / 3.0 + 2.0 * s(c) / 3.0 - s(1.0 / 3.0 + 2.0 * c / 3.0)
    return diff / (eps * eps)


def _south_coefficient(s: Callable[[float], float], h: float) -> float:
    # polar chord against the horizontal chord near the south pole; leading order 1 + cos(pi - h)
    c = -math.cos(h)
    eps = 1.0 + c
    diff = (1.0 + c) / 2.0 * s(1.0) + (1.0 - c) / 2.0 * s(-1.0) - s(c)
    return diff / eps


def _richardson(coefficient: Callable[[float], float], h: float) -> float:
    coarse = (4.0 * coefficient(h / 2.0) - coefficient(h)) / 3.0
    fine = (4.0 * coefficient(h / 4.0) - coefficient(h / 2.0)) / 3.0
    if abs(coarse - fine) > RICHARDSON_TOL * max(1.0, abs(fine)):
        logger.debug("Richardson extrapolation not converged: %.3g vs %.3g", coarse, fine)
    return coarse


def _rising_roots(fn: Callable[[float], float], grid: np.ndarray) -> List[float]:
    values = np.array([fn(b) for b in grid])
    roots = []
    for i in range(len(grid) - 1):
        if values[i] < 0.0 <= values[i + 1]:
            roots.append(float(brentq(fn, grid[i], grid[i + 1], xtol=1e-12)))
    return roots


def detect_bifurcation_betas(
    alpha: float,
    gamma: float,
    step: float = DETECTOR_STEP,
    grid_size: int = DETECTOR_GRID,
) -> Tuple[float, float]:
    """
    Locate beta_1 and beta_2 numerically from competing decompositions of axis states.

    beta_1 is where a pole plus a horizontal pair ties the horizontal chord next to the apex
    pole, beta_2 where the polar chord ties the horizontal chord next to the opposite pole.
    Each tie is the sign change in beta of the extrapolated leading coefficient of the value
    difference.
    """
    a, g, _ = oriented(alpha, gamma)
    beta_max = AxialParams(alpha=a, beta=0.0, gamma=g).beta_max
    grid = np.linspace(1e-6, beta_max * (1.0 - 1e-9), grid_size)

    def north(beta: float) -> float:
        return _richardson(lambda h: _north_coefficient(_axis_entropy(a, beta, g), h), step)

    def south(beta: float) -> float:
        return _richardson(lambda h: _south_coefficient(_axis_entropy(a, beta, g), h), step)

    found = []
    for name, fn in (("beta1", north), ("beta2", south)):
        roots = _rising_roots(fn, grid)
        if not roots:
            raise QRoofError(f"no {name} crossing found for alpha={alpha:g}, gamma={gamma:g}")
        if len(roots) > 1:
            logger.info("%s has %d crossings for alpha=%g, gamma=%g; taking the largest", name, len(roots), alpha, gamma)
        found.append(roots[-1])
    return found[0], found[1]
