"""One-shot (product state) classical capacity: the maximum of S(Phi(rho)) - E(rho) over inputs."""

from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from typing import Callable, List, Optional, Tuple

import numpy as np
from scipy.optimize import minimize, minimize_scalar

from qroof.bloch import State, binary_entropy, fibonacci_ball, radial_entropy, von_neumann_entropy
from qroof.capacity.config import CapacitySettings
from qroof.channel import QubitMap, require_positive
from qroof.concurrence import concurrence_form
from qroof.entanglement import axis_entanglement, entanglement_detail, xi
from qroof.roof_oracle import Budget, RoofOracle

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CapacityResult:
    chi: float
    argmax_state: State
    method: str
    profile: Optional[List[Tuple[float, float]]] = None

    @property
    def argmax_z(self) -> float:
        return float(self.argmax_state.bloch[2])

    def to_dict(self):
        result = {"chi": self.chi, "argmax": self.argmax_state.bloch.tolist(), "method": self.method}
        if self.profile is not None:
            result["profile"] = [list(point) for point in self.profile]
        return result


def holevo_quantity(
    m: QubitMap,
    s: State,
    base: float = 2.0,
    budget: Optional[Budget] = None,
    oracle: Optional[RoofOracle] = None,
    cross_check: bool = True,
) -> float:
    output = von_neumann_entropy(m.apply_state(s), base)
    entangled = entanglement_detail(m, s, base=base, budget=budget, oracle=oracle, cross_check=cross_check)
    return output - entangled.value


def unital_capacity(w: float, base: float = 2.0) -> float:
    """log 2 - H((1 + sqrt w) / 2, (1 - sqrt w) / 2); w is the critical parameter of the map."""
    root = math.sqrt(min(max(w, 0.0), 1.0))
    return math.log(2.0) / math.log(base) - float(binary_entropy((1.0 + root) / 2.0, base))


def amplitude_damping_holevo(alpha: float, z: float, base: float = 2.0) -> float:
    """Holevo quantity of the amplitude-damping channel at the axis state (0, 0, z)."""
    excited = (1.0 + z) * alpha / 2.0
    return float(binary_entropy(excited, base)) - float(xi((1.0 + z) * math.sqrt(alpha * (1.0 - alpha)), base))


def _maximize_on_segment(fn: Callable[[float], float], xatol: float) -> Tuple[float, float]:
    """Maximum of a concave function on [-1, 1]; endpoints are compared explicitly."""
    res = minimize_scalar(lambda z: -fn(z), bounds=(-1.0, 1.0), method="bounded", options={"xatol": xatol})
    candidates = [(-float(res.fun), float(res.x)), (fn(-1.0), -1.0), (fn(1.0), 1.0)]
    best = int(np.argmax([value for value, _ in candidates]))
    return candidates[best]


def amplitude_damping_capacity(alpha: float, base: float = 2.0, xatol: float = 1e-8) -> CapacityResult:
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"amplitude damping parameter must lie in [0, 1], got {alpha}")
    chi, z = _maximize_on_segment(lambda z: amplitude_damping_holevo(alpha, z, base), xatol)
    return CapacityResult(chi=max(chi, 0.0), argmax_state=State.from_bloch([0.0, 0.0, z]), method="amplitude-damping")


def axis_holevo(
    m: QubitMap,
    z: float,
    base: float = 2.0,
    budget: Optional[Budget] = None,
    oracle: Optional[RoofOracle] = None,
) -> float:
    radius = abs(m.t[2] + m.lam[2, 2] * z)
    output = float(radial_entropy(min(radius, 1.0), base))
    return output - axis_entanglement(m, z, base=base, budget=budget, oracle=oracle)


def _ball_point(params: np.ndarray) -> np.ndarray:
    # the whole of R^3 onto the open ball
    norm = float(np.linalg.norm(params))
    if norm < 1e-300:
        return np.zeros(3)
    return params * (math.tanh(norm) / norm)


def _ball_params(point: np.ndarray) -> np.ndarray:
    r = float(np.linalg.norm(point))
    if r < 1e-300:
        return np.zeros(3)
    return point * (math.atanh(min(r, 1.0 - 1e-12)) / r)


def maximize_over_ball(
    fn: Callable[[State], float],
    starts: np.ndarray,
    iterations: int,
    threads: int = 1,
) -> Tuple[float, State]:
    """Multistart Nelder-Mead over the Bloch ball; ties go to the first start."""

    def run(start: np.ndarray) -> Tuple[float, np.ndarray]:
        res = minimize(
            lambda p: -fn(State.from_bloch(_ball_point(p))),
            _ball_params(start),
            method="Nelder-Mead",
            options={"maxiter": iterations, "xatol": 1e-9, "fatol": 1e-12},
        )
        if not res.success:
            logger.debug("capacity search stopped early: %s", res.message)
        return -float(res.fun), _ball_point(np.asarray(res.x))

    items = list(starts)
    if threads <= 1 or len(items) <= 1:
        results = [run(start) for start in items]
    else:
        with ThreadPoolExecutor(max_workers=min(threads, len(items))) as executor:
            results = list(executor.map(run, items))
    best = int(np.argmax([value for value, _ in results]))
    value, point = results[best]
    return value, State.from_bloch(point)


def hsw_capacity(
    m: QubitMap,
    base: float = 2.0,
    budget: Optional[Budget] = None,
    oracle: Optional[RoofOracle] = None,
    settings: Optional[CapacitySettings] = None,
    profile_points: int = 0,
) -> CapacityResult:
    """
    Product-state capacity max_rho S(Phi(rho)) - E(rho).

    Unital maps use the closed form in the critical parameter, axial maps a bounded search along
    the symmetry axis, and any other map a multistart search over the Bloch ball. For axial maps
    `profile_points` > 0 also samples the Holevo quantity along the axis.
    """
    require_positive(m)
    settings = settings or CapacitySettings()
    budget = budget or (oracle.budget if oracle is not None else Budget())

    if m.is_unital():
        w0 = concurrence_form(m).w0
        return CapacityResult(chi=unital_capacity(w0, base), argmax_state=State.center(), method="unital")

    if m.axial_params() is not None:

        def on_axis(z: float) -> float:
            return axis_holevo(m, z, base=base, budget=budget, oracle=oracle)

        chi, z = _maximize_on_segment(on_axis, settings.xatol)
        profile = None
        if profile_points > 0:
            profile = [(float(zi), on_axis(float(zi))) for zi in np.linspace(-1.0, 1.0, profile_points)]
        return CapacityResult(
            chi=max(chi, 0.0),
            argmax_state=State.from_bloch([0.0, 0.0, z]),
            method="axial",
            profile=profile,
        )

    inner = replace(budget, threads=1)
    starts = np.vstack([np.zeros((1, 3)), fibonacci_ball(settings.starts)])
    chi, state = maximize_over_ball(
        lambda s: holevo_quantity(m, s, base=base, budget=inner, cross_check=False),
        starts,
        settings.iterations,
        budget.threads,
    )
    return CapacityResult(chi=max(chi, 0.0), argmax_state=state, method="general")
