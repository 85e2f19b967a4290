from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Tuple

import numpy as np

from qroof.bloch import TAU_PURE, PureState, State
from qroof.utils import QRoofError

MIN_WEIGHT = 1e-14


class PureInput(QRoofError):
    pass


@dataclass(frozen=True, eq=False)
class Decomposition:
    """A convex combination of pure states; `directions` are the unit Bloch vectors of the members."""

    weights: np.ndarray
    directions: np.ndarray

    @staticmethod
    def build(weights: np.ndarray, directions: np.ndarray) -> Decomposition:
        """Drop negligible members, renormalise and put each direction on the sphere."""
        weights = np.asarray(weights, dtype=float)
        directions = np.asarray(directions, dtype=float)
        keep = weights > MIN_WEIGHT
        weights = weights[keep] / np.sum(weights[keep])
        directions = directions[keep]
        directions = directions / np.linalg.norm(directions, axis=1, keepdims=True)
        return Decomposition(weights=weights, directions=directions)

    @property
    def length(self) -> int:
        return int(self.weights.shape[0])

    @property
    def members(self) -> List[Tuple[float, PureState]]:
        return [(float(w), PureState(d)) for w, d in zip(self.weights, self.directions)]

    def barycenter(self) -> np.ndarray:
        return self.weights @ self.directions

    def reconstruction_error(self, s: State) -> float:
        return float(np.linalg.norm(self.barycenter() - s.bloch))

    def to_dict(self):
        return {
            "members": [{"weight": float(w), "direction": d.tolist()} for w, d in zip(self.weights, self.directions)],
        }


@dataclass(frozen=True, eq=False)
class RoofResult:
    value: float
    decomposition: Decomposition
    flat: bool
    member_values: np.ndarray
    values_by_length: Dict[int, float] = field(default_factory=dict)

    def to_dict(self):
        return {
            "value": self.value,
            "flat": self.flat,
            "length": self.decomposition.length,
            "values_by_length": {str(k): v for k, v in sorted(self.values_by_length.items())},
            "member_values": self.member_values.tolist(),
            **self.decomposition.to_dict(),
        }


def require_mixed(s: State) -> None:
    if s.radius >= 1.0 - TAU_PURE:
        raise PureInput(f"state with Bloch radius {s.radius:.12g} is pure; it has only the trivial decomposition")


def chord_split(bloch: np.ndarray, directions: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """
    Split mixed states along chords.

    :param bloch: (n, 3) or (3,) points strictly inside the ball.
    :param directions: (n, 3) unit chord directions.
    :return: weights and endpoints (w_plus, p_plus, w_minus, p_minus).
    """
    sd = np.einsum("ni,ni->n", np.broadcast_to(bloch, directions.shape), directions)
    ss = np.einsum("ni,ni->n", np.broadcast_to(bloch, directions.shape), np.broadcast_to(bloch, directions.shape))
    root = np.sqrt(np.clip(sd * sd - ss + 1.0, 0.0, None))
    lam_plus = -sd + root
    lam_minus = -sd - root
    span = lam_plus - lam_minus
    w_plus = -lam_minus / span
    w_minus = lam_plus / span
    p_plus = bloch + lam_plus[:, None] * directions
    p_minus = bloch + lam_minus[:, None] * directions
    return w_plus, p_plus, w_minus, p_minus


def length2_family(s: State, direction: np.ndarray) -> Decomposition:
    require_mixed(s)
    d = np.asarray(direction, dtype=float)
    d = (d / np.linalg.norm(d))[None, :]
    w_plus, p_plus, w_minus, p_minus = chord_split(s.bloch, d)
    return Decomposition.build(
        np.array([w_plus[0], w_minus[0]]),
        np.vstack([p_plus, p_minus]),
    )
