from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

import numpy as np

from qroof.utils import QRoofError

TAU_PURE = 1e-9

# identity followed by sigma_x, sigma_y, sigma_z
PAULI = np.array(
    [
        [[1, 0], [0, 1]],
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
        [[1, 0], [0, -1]],
    ],
    dtype=complex,
)

ETA = np.diag([1.0, -1.0, -1.0, -1.0])

ArrayLike = Union[np.ndarray, Iterable[float]]


class InvalidState(QRoofError):
    pass


def _frozen(values: ArrayLike, size: int, name: str) -> np.ndarray:
    arr = np.array(values, dtype=float).reshape(-1)
    if arr.shape != (size,):
        raise ValueError(f"{name} must have {size} components, got {arr.shape[0]}")
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class MinkowskiVector:
    """
    A Hermitian 2x2 matrix written as x0 * I/2 + (x . sigma)/2.

    The determinant of the matrix is a quarter of the Minkowski square x0^2 - |x|^2.
    """

    x0: float
    x: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "x0", float(self.x0))
        object.__setattr__(self, "x", _frozen(self.x, 3, "spatial part"))

    @staticmethod
    def from_array(arr: ArrayLike) -> MinkowskiVector:
        values = np.asarray(arr, dtype=float).reshape(-1)
        if values.shape != (4,):
            raise ValueError(f"a Minkowski vector has 4 components, got {values.shape[0]}")
        return MinkowskiVector(values[0], values[1:])

    @staticmethod
    def from_matrix(matrix: np.ndarray) -> MinkowskiVector:
        matrix = np.asarray(matrix, dtype=complex)
        if matrix.shape != (2, 2):
            raise ValueError(f"expected a 2x2 matrix, got shape {matrix.shape}")
        if not np.allclose(matrix, matrix.conj().T, atol=1e-12):
            raise ValueError("matrix is not Hermitian")
        coords = np.einsum("kij,ji->k", PAULI, matrix).real
        return MinkowskiVector.from_array(coords)

    def as_array(self) -> np.ndarray:
        return np.concatenate(([self.x0], self.x))

    def to_matrix(self) -> np.ndarray:
        return 0.5 * np.einsum("k,kij->ij", self.as_array(), PAULI)

    def dot(self, other: MinkowskiVector) -> float:
        return minkowski_dot(self, other)

    def __add__(self, other: MinkowskiVector) -> MinkowskiVector:
        return MinkowskiVector(self.x0 + other.x0, self.x + other.x)

    def __sub__(self, other: MinkowskiVector) -> MinkowskiVector:
        return MinkowskiVector(self.x0 - other.x0, self.x - other.x)

    def __mul__(self, scalar: float) -> MinkowskiVector:
        return MinkowskiVector(scalar * self.x0, scalar * self.x)

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return f"MinkowskiVector({self.x0:.9g}, {np.array2string(self.x, precision=9)})"

    def to_dict(self):
        return {"x0": self.x0, "x": self.x.tolist()}


def minkowski_dot(a: MinkowskiVector, b: MinkowskiVector) -> float:
    return float(a.x0 * b.x0 - np.dot(a.x, b.x))


def det4(v: MinkowskiVector) -> float:
    return minkowski_dot(v, v) / 4.0


@dataclass(frozen=True, eq=False)
class State:
    """A qubit density operator: a Minkowski vector with unit trace inside the Bloch ball."""

    v: MinkowskiVector

    def __post_init__(self):
        if abs(self.v.x0 - 1.0) > 1e-12:
            raise InvalidState(f"a state has unit trace, got x0={self.v.x0}")
        if np.linalg.norm(self.v.x) > 1.0 + TAU_PURE:
            raise InvalidState(f"Bloch vector of length {np.linalg.norm(self.v.x):.12g} lies outside the ball")

    @staticmethod
    def from_bloch(x: ArrayLike) -> State:
        return State(MinkowskiVector(1.0, x))

    @staticmethod
    def center() -> State:
        return State.from_bloch(np.zeros(3))

    @property
    def bloch(self) -> np.ndarray:
        return self.v.x

    @property
    def radius(self) -> float:
        return float(np.linalg.norm(self.v.x))

    @property
    def is_pure(self) -> bool:
        return abs(self.radius - 1.0) <= TAU_PURE

    def to_matrix(self) -> np.ndarray:
        return self.v.to_matrix()

    def to_dict(self):
        return {"bloch": self.bloch.tolist()}


@dataclass(frozen=True, eq=False)
class PureState:
    direction: np.ndarray

    def __post_init__(self):
        direction = np.array(self.direction, dtype=float).reshape(-1)
        norm = np.linalg.norm(direction)
        if direction.shape != (3,) or norm < 1e-12:
            raise InvalidState(f"a pure state needs a non-zero 3-vector direction, got {direction}")
        object.__setattr__(self, "direction", _frozen(direction / norm, 3, "direction"))

    @staticmethod
    def from_angles(theta: float, phi: float) -> PureState:
        return PureState(
            np.array([np.sin(theta) * np.cos(phi), np.sin(theta) * np.sin(phi), np.cos(theta)]),
        )

    @property
    def vector(self) -> MinkowskiVector:
        return MinkowskiVector(1.0, self.direction)

    def as_state(self) -> State:
        return State(self.vector)

    def to_dict(self):
        return {"direction": self.direction.tolist()}


def fibonacci_sphere(n: int) -> np.ndarray:
    """Quasi-uniform unit vectors on the sphere, shape (n, 3)."""
    if n < 1:
        raise ValueError("need at least one point")
    i = np.arange(n) + 0.5
    z = 1.0 - 2.0 * i / n
    r = np.sqrt(np.clip(1.0 - z * z, 0.0, None))
    phi = np.pi * (3.0 - np.sqrt(5.0)) * i
    return np.stack([r * np.cos(phi), r * np.sin(phi), z], axis=1)


def fibonacci_ball(n: int) -> np.ndarray:
    """Quasi-uniform points inside the unit ball, shape (n, 3)."""
    radii = ((np.arange(n) + 0.5) / n) ** (1.0 / 3.0)
    return fibonacci_sphere(n) * radii[:, None]
