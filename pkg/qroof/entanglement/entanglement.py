from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from qroof.bloch import State, von_neumann_entropy
from qroof.channel import QubitMap
from qroof.concurrence import Flat, concurrence_form, foliation_of
from qroof.entanglement.xi import xi
from qroof.roof_oracle import (
    TAU_FLAT,
    Budget,
    PureStateFunctional,
    RoofOracle,
    RoofResult,
    concurrence_functional,
    entropy_functional,
    length2_family,
    minimize_roof,
)

AXIS_PLANE_NORMAL = np.array([0.0, 1.0, 0.0])


@dataclass(frozen=True)
class EntanglementValue:
    value: float
    method: str
    concurrence: float
    roof: Optional[RoofResult] = None

    def to_dict(self):
        result = {"value": self.value, "method": self.method, "concurrence": self.concurrence}
        if self.roof is not None:
            result["roof"] = self.roof.to_dict()
        return result


def _minimize(
    s: State,
    g: PureStateFunctional,
    max_length: int,
    budget: Optional[Budget],
    oracle: Optional[RoofOracle],
    plane_normal: Optional[np.ndarray] = None,
) -> RoofResult:
    if oracle is not None:
        return oracle.minimize(s, g, max_length=max_length, plane_normal=plane_normal)
    return minimize_roof(s, g, max_length=max_length, budget=budget, plane_normal=plane_normal)


def entanglement_bounds(m: QubitMap, s: State, base: float = 2.0) -> Tuple[float, float]:
    """xi(C) <= E <= C log 2, both in the units of `base`."""
    c = concurrence_form(m).evaluate(s)
    return float(xi(c, base)), c * math.log(2.0) / math.log(base)


def flat_leaf(m: QubitMap, s: State) -> bool:
    """True when the concurrence is constant along the foliation leaf through s."""
    form = concurrence_form(m)
    fol = foliation_of(form)
    if isinstance(fol, Flat):
        return True
    decomposition = length2_family(s, fol.leaf_direction(s))
    values = concurrence_functional(m)(decomposition.directions)
    return bool(np.ptp(values) <= TAU_FLAT)


def entanglement_detail(
    m: QubitMap,
    s: State,
    base: float = 2.0,
    budget: Optional[Budget] = None,
    oracle: Optional[RoofOracle] = None,
    cross_check: bool = True,
) -> EntanglementValue:
    """
    Entanglement entropy E(s) = min over decompositions of sum_j p_j S(Phi(pi_j)).

    On a flat concurrence roof point the value is xi(C) exactly; elsewhere it is the
    oracle minimum over decompositions of length up to 3, also searched at length 4
    when `cross_check` is set.
    """
    form = concurrence_form(m)
    c = form.evaluate(s)
    if s.is_pure:
        return EntanglementValue(von_neumann_entropy(m.apply_state(s), base), "pure", c)
    fol = foliation_of(form)
    if isinstance(fol, Flat):
        return EntanglementValue(float(xi(c, base)), "flat-roof", c)
    if flat_leaf(m, s):
        return EntanglementValue(float(xi(c, base)), "flat-leaf", c)
    roof = _minimize(s, entropy_functional(m, base), 4 if cross_check else 3, budget, oracle)
    return EntanglementValue(roof.value, "oracle", c, roof)


def entanglement(
    m: QubitMap,
    s: State,
    base: float = 2.0,
    budget: Optional[Budget] = None,
    oracle: Optional[RoofOracle] = None,
) -> float:
    return entanglement_detail(m, s, base=base, budget=budget, oracle=oracle).value


def axis_entanglement(
    m: QubitMap,
    z: float,
    base: float = 2.0,
    budget: Optional[Budget] = None,
    oracle: Optional[RoofOracle] = None,
) -> float:
    """
    Entanglement entropy of the state (0, 0, z) under an axial map.

    The map commutes with the reflection y -> -y, so the search is confined to the x-z plane.
    """
    if m.axial_params() is None:
        raise ValueError(f"{m.label} does not commute with rotations about the z-axis")
    s = State.from_bloch([0.0, 0.0, z])
    form = concurrence_form(m)
    if s.is_pure:
        return von_neumann_entropy(m.apply_state(s), base)
    c = form.evaluate(s)
    if isinstance(foliation_of(form), Flat) or flat_leaf(m, s):
        return float(xi(c, base))
    roof = _minimize(s, entropy_functional(m, base), 3, budget, oracle, plane_normal=AXIS_PLANE_NORMAL)
    return roof.value
