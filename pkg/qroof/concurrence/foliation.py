from __future__ import annotations

from dataclasses import dataclass
from typing import ClassVar, Union

import numpy as np
from scipy.linalg import null_space, orth

from qroof.bloch import MinkowskiVector, State
from qroof.channel import QubitMap
from qroof.concurrence.form import ConcurrenceForm, concurrence_form
from qroof.utils import QRoofError

N0_FLAT = 1e-7


class DegenerateKernel(QRoofError):
    def __init__(self, message: str, kernel_basis: np.ndarray):
        super().__init__(message)
        self.kernel_basis = kernel_basis


@dataclass(frozen=True, eq=False)
class Flat:
    """
    Leaves are chords parallel to the flat directions; the concurrence is constant on them.

    With a multi-dimensional kernel `directions` holds several orthonormal rows and the leaves
    are the planar sections they span.
    """

    directions: np.ndarray
    kernel_basis: np.ndarray
    tag: ClassVar[str] = "Flat"

    @property
    def direction(self) -> np.ndarray:
        return self.directions[0]

    @property
    def degenerate(self) -> bool:
        return self.kernel_basis.shape[0] > 1

    def leaf_direction(self, s: State) -> np.ndarray:
        return self.direction

    def describe(self) -> str:
        dirs = "; ".join(np.array2string(d, precision=6, suppress_small=True) for d in self.directions)
        return f"Flat directions=[{dirs}]"

    def to_dict(self):
        return {"tag": self.tag, "directions": self.directions.tolist()}


@dataclass(frozen=True, eq=False)
class Apex:
    """Leaves are chords through a common point outside (or on) the Bloch ball."""

    point: MinkowskiVector
    kernel_basis: np.ndarray
    tag: ClassVar[str] = "Apex"

    @property
    def degenerate(self) -> bool:
        return False

    def leaf_direction(self, s: State) -> np.ndarray:
        d = s.bloch - self.point.x
        return d / np.linalg.norm(d)

    def describe(self) -> str:
        return f"Apex point={np.array2string(self.point.as_array(), precision=6, suppress_small=True)}"

    def to_dict(self):
        return {"tag": self.tag, "point": self.point.as_array().tolist()}


Foliation = Union[Flat, Apex]


def foliation_of(form: ConcurrenceForm, strict: bool = False) -> Foliation:
    basis = form.kernel_basis
    if basis.shape[0] > 1:
        if strict:
            raise DegenerateKernel(f"kernel of Q_w0 has dimension {basis.shape[0]}", basis)
        n0 = basis[:, 0]
        if np.linalg.norm(n0) < N0_FLAT:
            spatial = basis[:, 1:]
        else:
            spatial = (basis.T @ null_space(n0[None, :]))[1:].T
        return Flat(directions=orth(spatial.T).T, kernel_basis=basis)

    n = form.kernel.as_array()
    if abs(n[0]) < N0_FLAT:
        return Flat(directions=(n[1:] / np.linalg.norm(n[1:]))[None, :], kernel_basis=basis)
    return Apex(point=MinkowskiVector.from_array(n / n[0]), kernel_basis=basis)


def foliation(m: QubitMap, strict: bool = False) -> Foliation:
    """
    Geometry of the optimal decompositions of the concurrence.

    With `strict`, a kernel of dimension above one raises DegenerateKernel carrying the basis;
    otherwise it is reported as a Flat foliation spanned by the kernel's spatial part.
    """
    return foliation_of(concurrence_form(m), strict=strict)
