from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np
from injector import inject
from scipy.optimize import minimize

from qroof.bloch import State, fibonacci_sphere
from qroof.channel import QubitMap
from qroof.logging import TelemetryLogger
from qroof.roof_oracle.budget import Budget
from qroof.roof_oracle.decomposition import Decomposition, RoofResult, chord_split, require_mixed
from qroof.roof_oracle.functionals import PureStateFunctional, concurrence_functional, entropy_functional

logger = logging.getLogger(__name__)

TAU_FLAT = 1e-5
FLAT_MEMBER_WEIGHT = 1e-7
CARATHEODORY_SLACK = 1e-5
RESIDUAL_MARGIN = 1e-9
SIMPLEX_STEP = 0.1


class _Directions:
    """Unit directions as angles: two on the sphere, or one on the great circle normal to `plane_normal`."""

    def __init__(self, plane_normal: Optional[np.ndarray] = None):
        self.normal: Optional[np.ndarray] = None
        if plane_normal is None:
            self.size = 2
            return
        normal = np.asarray(plane_normal, dtype=float)
        normal = normal / np.linalg.norm(normal)
        axis = np.zeros(3)
        axis[int(np.argmin(np.abs(normal)))] = 1.0
        e1 = np.cross(normal, axis)
        e1 /= np.linalg.norm(e1)
        self.normal = normal
        self.e1 = e1
        self.e2 = np.cross(normal, e1)
        self.size = 1

    def vectors(self, params: np.ndarray) -> np.ndarray:
        if self.normal is None:
            theta, phi = params[:, 0], params[:, 1]
            return np.stack(
                [np.sin(theta) * np.cos(phi), np.sin(theta) * np.sin(phi), np.cos(theta)],
                axis=1,
            )
        psi = params[:, 0]
        return np.cos(psi)[:, None] * self.e1 + np.sin(psi)[:, None] * self.e2

    def params_of(self, vectors: np.ndarray) -> np.ndarray:
        vectors = np.atleast_2d(vectors)
        if self.normal is None:
            theta = np.arccos(np.clip(vectors[:, 2], -1.0, 1.0))
            phi = np.arctan2(vectors[:, 1], vectors[:, 0])
            return np.stack([theta, phi], axis=1)
        return np.arctan2(vectors @ self.e2, vectors @ self.e1)[:, None]

    def grid(self, budget: Budget) -> np.ndarray:
        if self.normal is None:
            return self.params_of(fibonacci_sphere(budget.direction_grid))
        return (np.arange(budget.circle_grid) * np.pi / budget.circle_grid)[:, None]

    def coarse_grid(self) -> np.ndarray:
        if self.normal is None:
            return self.params_of(fibonacci_sphere(64))
        return (np.arange(32) * np.pi / 32)[:, None]

    def random(self, rng: np.random.Generator, n: int) -> np.ndarray:
        if self.normal is None:
            return self.params_of(rng.normal(size=(n, 3)))
        return rng.uniform(0.0, 2.0 * np.pi, size=(n, 1))

    def contains(self, point: np.ndarray) -> bool:
        return self.normal is None or abs(float(point @ self.normal)) <= 1e-9


class _LengthSearch:
    """
    Decompositions of fixed length m as points of a parameter box.

    A length-m decomposition is a pure vertex a with weight f followed by a length-(m-1)
    decomposition of the residual (s - f a) / (1 - f); length 2 is a chord through the state.
    The weight is f_max * sin(u)^2, f_max being the largest weight keeping the residual
    inside the ball, so every parameter vector is a feasible decomposition.
    """

    def __init__(self, s: np.ndarray, g: PureStateFunctional, dirs: _Directions, length: int):
        self.s = s
        self.g = g
        self.dirs = dirs
        self.length = length
        self.size = (length - 2) * (dirs.size + 1) + dirs.size

    def decompose(self, params: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        n = params.shape[0]
        current = np.broadcast_to(self.s, (n, 3)).copy()
        scale = np.ones(n)
        weights: List[np.ndarray] = []
        points: List[np.ndarray] = []
        col = 0
        for _ in range(self.length - 2):
            vertex = self.dirs.vectors(params[:, col : col + self.dirs.size])
            col += self.dirs.size
            u = params[:, col]
            col += 1
            sa = np.einsum("ni,ni->n", current, vertex)
            ss = np.einsum("ni,ni->n", current, current)
            f = (1.0 - ss) / (2.0 * (1.0 - sa)) * np.sin(u) ** 2 * (1.0 - RESIDUAL_MARGIN)
            weights.append(scale * f)
            points.append(vertex)
            current = (current - f[:, None] * vertex) / (1.0 - f)[:, None]
            scale = scale * (1.0 - f)
        chord = self.dirs.vectors(params[:, col : col + self.dirs.size])
        w_plus, p_plus, w_minus, p_minus = chord_split(current, chord)
        weights += [scale * w_plus, scale * w_minus]
        points += [p_plus, p_minus]
        return np.stack(weights, axis=1), np.stack(points, axis=1)

    def objective(self, params: np.ndarray) -> np.ndarray:
        weights, points = self.decompose(np.atleast_2d(params))
        values = self.g(points.reshape(-1, 3)).reshape(weights.shape)
        return np.sum(weights * values, axis=1)

    def refine(self, x0: np.ndarray, maxiter: int) -> Tuple[float, np.ndarray]:
        simplex = np.vstack([x0, x0 + SIMPLEX_STEP * np.eye(x0.shape[0])])
        res = minimize(
            lambda p: float(self.objective(p)[0]),
            x0,
            method="Nelder-Mead",
            options={
                "maxiter": maxiter,
                "maxfev": 2 * maxiter,
                "xatol": 1e-10,
                "fatol": 1e-13,
                "initial_simplex": simplex,
            },
        )
        if not res.success:
            logger.debug("Nelder-Mead stopped at length %d: %s", self.length, res.message)
        return float(res.fun), np.asarray(res.x)


def _map_ordered(fn: Callable, items: List, threads: int) -> List:
    # results keep the order of `items`, so the reduction below does not depend on scheduling
    if threads <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=min(threads, len(items))) as executor:
        return list(executor.map(fn, items))


def _best_of(search: _LengthSearch, seeds: np.ndarray, budget: Budget, maxiter: int) -> Tuple[float, np.ndarray]:
    seed_values = search.objective(seeds)
    order = np.argsort(seed_values, kind="stable")[: budget.refine_top]
    refined = _map_ordered(lambda x0: search.refine(x0, maxiter), [seeds[i] for i in order], budget.threads)
    values = np.array([value for value, _ in refined])
    best = int(np.argmin(values))
    return float(values[best]), refined[best][1]


def _extension_seeds(search: _LengthSearch, previous: np.ndarray, starts: np.ndarray) -> np.ndarray:
    """Seeds of length m that reduce to a length-(m-1) solution as u -> 0, with a vertex at each start."""
    rows = []
    for vertex in starts:
        for u in (0.05, 0.2, 0.5):
            rows.append(np.concatenate([search.dirs.params_of(vertex)[0], [u], previous]))
    return np.array(rows)


def _pinned_seeds(search: _LengthSearch, inner_size: int, rng: np.random.Generator) -> np.ndarray:
    """Seeds with one vertex at a pole of the z-axis."""
    rows = []
    chords = search.dirs.coarse_grid()
    for pole in (np.array([0.0, 0.0, 1.0]), np.array([0.0, 0.0, -1.0])):
        if not search.dirs.contains(pole):
            continue
        pole_params = search.dirs.params_of(pole)[0]
        for u in np.linspace(0.1, 1.5, 8):
            for chord in chords:
                tail = chord if inner_size == chord.shape[0] else np.concatenate(
                    [rng.uniform(0.0, np.pi, inner_size - chord.shape[0]), chord],
                )
                rows.append(np.concatenate([pole_params, [u], tail]))
    return np.array(rows) if rows else np.empty((0, search.size))


def _random_seeds(search: _LengthSearch, rng: np.random.Generator, n: int) -> np.ndarray:
    blocks = []
    for _ in range(search.length - 2):
        blocks.append(search.dirs.random(rng, n))
        blocks.append(rng.uniform(0.0, np.pi / 2, size=(n, 1)))
    blocks.append(search.dirs.random(rng, n))
    return np.hstack(blocks)


def minimize_roof(
    s: State,
    g: PureStateFunctional,
    max_length: int = 3,
    budget: Optional[Budget] = None,
    plane_normal: Optional[np.ndarray] = None,
) -> RoofResult:
    """
    Brute-force convex roof: the smallest average of g found over pure-state decompositions of s
    with at most `max_length` members.

    With `plane_normal` the members are confined to the great circle through s normal to it,
    which is exact for maps symmetric under reflection through that plane.
    """
    if not 2 <= max_length <= 4:
        raise ValueError(f"max_length must lie in [2, 4], got {max_length}")
    require_mixed(s)
    budget = budget or Budget()
    dirs = _Directions(plane_normal)
    if not dirs.contains(s.bloch):
        raise ValueError("state does not lie in the plane of the search")

    values: Dict[int, float] = {}
    best_params: Dict[int, np.ndarray] = {}
    searches: Dict[int, _LengthSearch] = {}

    search2 = _LengthSearch(s.bloch, g, dirs, 2)
    searches[2] = search2
    values[2], best_params[2] = _best_of(search2, dirs.grid(budget), budget, budget.nm_iterations)

    for length in range(3, max_length + 1):
        rng = np.random.default_rng([budget.seed, length])
        search = _LengthSearch(s.bloch, g, dirs, length)
        previous = best_params[length - 1]
        _, points = searches[length - 1].decompose(previous[None, :])
        seeds = [
            _random_seeds(search, rng, budget.triangle_seeds),
            _extension_seeds(search, previous, points[0]),
            _pinned_seeds(search, search.size - dirs.size - 1, rng),
        ]
        searches[length] = search
        found, best_params[length] = _best_of(
            search,
            np.vstack([block for block in seeds if block.size]),
            budget,
            budget.nm_iterations_high,
        )
        # a shorter decomposition is a longer one with a vanishing weight
        values[length] = min(found, values[length - 1])

    if 4 in values and values[4] < values[3] - CARATHEODORY_SLACK:
        logger.warning(
            "length-4 decomposition improves on length 3 by %.3g at %s",
            values[3] - values[4],
            np.array2string(s.bloch, precision=6),
        )

    lengths = sorted(values)
    best_length = lengths[int(np.argmin([values[k] for k in lengths]))]
    weights, points = searches[best_length].decompose(best_params[best_length][None, :])
    decomposition = Decomposition.build(weights[0], points[0])
    member_values = g(decomposition.directions)
    value = float(decomposition.weights @ member_values)
    significant = member_values[decomposition.weights > FLAT_MEMBER_WEIGHT]
    flat = bool(np.ptp(significant) <= TAU_FLAT) if significant.size else True
    return RoofResult(
        value=value,
        decomposition=decomposition,
        flat=flat,
        member_values=member_values,
        values_by_length=values,
    )


def leaf_scan(
    m: QubitMap,
    s: State,
    functional: Optional[PureStateFunctional] = None,
    budget: Optional[Budget] = None,
    max_length: int = 2,
    plane_normal: Optional[np.ndarray] = None,
) -> bool:
    """True when the best decomposition found has equal g on all members (pure-state concurrence by default)."""
    g = functional or concurrence_functional(m)
    return minimize_roof(s, g, max_length=max_length, budget=budget, plane_normal=plane_normal).flat


class RoofOracle:
    """Injectable front of the oracle carrying the configured budget."""

    @inject
    def __init__(self, budget: Budget, logger: TelemetryLogger):
        self.budget = budget
        self.logger = logger

    def minimize(
        self,
        s: State,
        g: PureStateFunctional,
        max_length: int = 3,
        plane_normal: Optional[np.ndarray] = None,
    ) -> RoofResult:
        result = minimize_roof(s, g, max_length=max_length, budget=self.budget, plane_normal=plane_normal)
        by_length = result.values_by_length
        if 4 in by_length and by_length[4] < by_length[3] - CARATHEODORY_SLACK:
            self.logger.telemetry_logging(
                "caratheodory violation",
                {"state": s.bloch.tolist(), "functional": g.name, "values_by_length": by_length},
            )
        self.logger.debug(f"oracle {g.name} at {s.bloch.tolist()}: {by_length}")
        return result

    def concurrence(self, m: QubitMap, s: State, max_length: int = 2) -> RoofResult:
        return self.minimize(s, concurrence_functional(m), max_length=max_length)

    def entanglement(self, m: QubitMap, s: State, base: float = 2.0, max_length: int = 3) -> RoofResult:
        return self.minimize(s, entropy_functional(m, base), max_length=max_length)

    def leaf_scan(self, m: QubitMap, s: State, functional: Optional[PureStateFunctional] = None) -> bool:
        return self.minimize(s, functional or concurrence_functional(m), max_length=2).flat
