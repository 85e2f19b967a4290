from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from typing import List, Optional, Sequence, Tuple

import numpy as np

from qroof.capacity.config import CapacitySettings
from qroof.capacity.holevo import (
    amplitude_damping_capacity,
    axis_holevo,
    holevo_quantity,
    hsw_capacity,
    maximize_over_ball,
    unital_capacity,
)
from qroof.channel import AxialParams, QubitMap, axial
from qroof.entanglement import PhaseLabel, classify_phase
from qroof.roof_oracle import Budget

logger = logging.getLogger(__name__)

PHASE_III_TOL = 1e-6
OFF_AXIS_TOL = 1e-8


@dataclass(frozen=True)
class SweepPoint:
    beta: float
    chi: float
    phase: PhaseLabel
    argmax_z: float

    def to_dict(self):
        return {"beta": self.beta, "chi": self.chi, "phase": self.phase.value, "argmax_z": self.argmax_z}


def capacity_sweep(
    alpha: float,
    gamma: float,
    betas: Sequence[float],
    base: float = 2.0,
    budget: Optional[Budget] = None,
    settings: Optional[CapacitySettings] = None,
) -> List[SweepPoint]:
    """
    HSW capacity along beta for fixed (alpha, gamma), one row per grid value in grid order.

    Grid points run in parallel on `budget.threads` workers; each point searches single-threaded.
    """
    budget = budget or Budget()
    inner = replace(budget, threads=1)

    def point(beta: float) -> SweepPoint:
        p = AxialParams(alpha=alpha, beta=float(beta), gamma=gamma)
        phase = classify_phase(p)
        result = hsw_capacity(axial(p), base=base, budget=inner, settings=settings)
        return SweepPoint(beta=float(beta), chi=result.chi, phase=phase, argmax_z=result.argmax_z)

    items = list(betas)
    if budget.threads <= 1 or len(items) <= 1:
        points = [point(beta) for beta in items]
    else:
        with ThreadPoolExecutor(max_workers=min(budget.threads, len(items))) as executor:
            points = list(executor.map(point, items))

    tail = [pt.chi for pt in points if pt.phase == PhaseLabel.III]
    if len(tail) > 1 and np.ptp(tail) > PHASE_III_TOL:
        logger.warning(
            "capacity varies by %.3g across phase III at alpha=%g, gamma=%g",
            float(np.ptp(tail)),
            alpha,
            gamma,
        )
    return points


def axis_holevo_profile(
    m: QubitMap,
    zs: Sequence[float],
    base: float = 2.0,
    budget: Optional[Budget] = None,
) -> List[Tuple[float, float]]:
    return [(float(z), axis_holevo(m, float(z), base=base, budget=budget)) for z in zs]


def amplitude_damping_profile(alphas: Sequence[float], base: float = 2.0) -> List[Tuple[float, float]]:
    return [(float(a), amplitude_damping_capacity(float(a), base).chi) for a in alphas]


def off_axis_probe(
    m: QubitMap,
    base: float = 2.0,
    budget: Optional[Budget] = None,
    starts: int = 8,
    iterations: int = 40,
) -> float:
    """
    Best off-axis Holevo quantity minus the on-axis capacity of an axial map.

    Starts are random points of the ball drawn from the budget seed; an improvement above
    OFF_AXIS_TOL is logged.
    """
    if m.axial_params() is None:
        raise ValueError(f"{m.label} is not axial")
    budget = budget or Budget()
    on_axis = hsw_capacity(m, base=base, budget=budget)
    rng = np.random.default_rng(budget.seed)
    directions = rng.normal(size=(starts, 3))
    directions /= np.linalg.norm(directions, axis=1, keepdims=True)
    points = directions * rng.uniform(0.2, 0.9, size=(starts, 1)) ** (1.0 / 3.0)
    inner = replace(budget, threads=1)
    best, state = maximize_over_ball(
        lambda s: holevo_quantity(m, s, base=base, budget=inner, cross_check=False),
        points,
        iterations,
        budget.threads,
    )
    improvement = best - on_axis.chi
    if improvement > OFF_AXIS_TOL:
        logger.warning(
            "off-axis input %s beats the axis capacity of %s by %.3g",
            np.array2string(state.bloch, precision=6),
            m.label,
            improvement,
        )
    return improvement


def unital_slice_reference(alpha: float, beta: float, base: float = 2.0) -> float:
    """Capacity of the axial map with alpha = gamma, through w = max((2 alpha - 1)^2, beta^2)."""
    return unital_capacity(max((2.0 * alpha - 1.0) ** 2, beta * beta), base)
