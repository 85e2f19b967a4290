"""Pydantic models of the channel specification document read by the command line."""

from typing import Annotated, Any, Dict, List, Literal, Union

from pydantic import BaseModel, ConfigDict, Field, TypeAdapter, ValidationError, field_validator

from qroof.channel.qubit_map import AxialParams, QubitMap, amplitude_damping, axial, depolarizing, phase_damping
from qroof.utils import QRoofError, read_yaml


class ChannelSpecError(QRoofError):
    pass


class GeneralChannelSpec(BaseModel):
    model_config = ConfigDict(populate_by_name=True, extra="forbid")

    kind: Literal["general"]
    lam: List[List[float]] = Field(..., alias="lambda", description="3x3 real matrix pinching the Bloch ball")
    t: List[float] = Field(..., description="translation of the ball, a real 3-vector")

    @field_validator("lam")
    @classmethod
    def _check_lambda(cls, value: List[List[float]]) -> List[List[float]]:
        if len(value) != 3 or any(len(row) != 3 for row in value):
            raise ValueError("lambda must be a 3x3 matrix")
        return value

    @field_validator("t")
    @classmethod
    def _check_t(cls, value: List[float]) -> List[float]:
        if len(value) != 3:
            raise ValueError("t must have 3 components")
        return value

    def to_map(self) -> QubitMap:
        return QubitMap(lam=self.lam, t=self.t)


class AxialChannelSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    kind: Literal["axial"]
    alpha: float
    beta: float
    gamma: float

    def to_map(self) -> QubitMap:
        return axial(AxialParams(alpha=self.alpha, beta=self.beta, gamma=self.gamma))


class NamedChannelSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    kind: Literal["named"]
    name: Literal["depolarizing", "phase_damping", "amplitude_damping"]
    param: float

    def to_map(self) -> QubitMap:
        if self.name == "depolarizing":
            return depolarizing(self.param)
        if self.name == "phase_damping":
            return phase_damping(self.param)
        return amplitude_damping(self.param)


ChannelSpec = Annotated[
    Union[GeneralChannelSpec, AxialChannelSpec, NamedChannelSpec],
    Field(discriminator="kind"),
]

_channel_spec_adapter: TypeAdapter = TypeAdapter(ChannelSpec)


def parse_channel_spec(document: Any) -> QubitMap:
    if not isinstance(document, dict):
        raise ChannelSpecError(f"channel spec must be a mapping, got {type(document).__name__}")
    try:
        spec = _channel_spec_adapter.validate_python(document)
    except ValidationError as e:
        problems = "; ".join(f"{'.'.join(str(p) for p in err['loc'])}: {err['msg']}" for err in e.errors())
        raise ChannelSpecError(f"invalid channel spec: {problems}")
    try:
        return spec.to_map()
    except ValueError as e:
        raise ChannelSpecError(f"invalid channel spec: {e}")


def load_channel_spec(path: str) -> QubitMap:
    """Read a channel document (YAML or JSON) and build the map it describes."""
    try:
        document: Dict[str, Any] = read_yaml(path)
    except ValueError as e:
        raise ChannelSpecError(f"cannot read channel file {path}: {e}")
    return parse_channel_spec(document)
