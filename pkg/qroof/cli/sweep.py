"""The `sweep` command and the document describing a sweep over the axial family."""

import itertools
import math
from typing import Any, Dict, List, Literal, Optional, Tuple, Union

import click
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from qroof.cli.util import CliContext, emit_frame, grid_values, parse_range, parse_state, report_errors
from qroof.utils import QRoofError, read_yaml

SweepOutput = Literal["concurrence", "entanglement", "capacity", "phase"]
AxialParameter = Literal["alpha", "beta", "gamma"]


class SweepSpecError(QRoofError):
    pass


class GridRange(BaseModel):
    model_config = ConfigDict(populate_by_name=True, extra="forbid")

    start: float = Field(..., alias="min")
    stop: float = Field(..., alias="max")
    step: float

    @model_validator(mode="after")
    def _check_range(self) -> "GridRange":
        if not self.step > 0:
            raise ValueError(f"grid step must be positive, got {self.step}")
        if not self.start < self.stop:
            raise ValueError(f"grid needs min < max, got {self.start} >= {self.stop}")
        return self

    def values(self) -> List[float]:
        return grid_values(self.start, self.stop, self.step).tolist()


class SweepSpec(BaseModel):
    """
    Each of alpha, beta and gamma is either fixed or gridded. Rows are the cartesian
    product of the grids in the order alpha, gamma, beta.
    """

    model_config = ConfigDict(extra="forbid")

    family: Literal["axial"] = "axial"
    alpha: Optional[float] = None
    beta: Optional[float] = None
    gamma: Optional[float] = None
    grid: Dict[AxialParameter, GridRange] = Field(default_factory=dict)
    outputs: List[SweepOutput] = Field(default_factory=lambda: ["phase"])
    state: List[float] = Field(default_factory=lambda: [0.0, 0.0, 0.0])

    @field_validator("state")
    @classmethod
    def _check_state(cls, value: List[float]) -> List[float]:
        if len(value) != 3:
            raise ValueError("state must have 3 Bloch coordinates")
        if math.sqrt(sum(c * c for c in value)) > 1.0:
            raise ValueError("state lies outside the Bloch ball")
        return value

    @field_validator("outputs")
    @classmethod
    def _check_outputs(cls, value: List[str]) -> List[str]:
        if not value:
            raise ValueError("at least one output is needed")
        return list(dict.fromkeys(value))

    @model_validator(mode="after")
    def _check_parameters(self) -> "SweepSpec":
        if not self.grid:
            raise ValueError("a sweep grids at least one of alpha, beta, gamma")
        for name in ("alpha", "beta", "gamma"):
            fixed = getattr(self, name) is not None
            if fixed and name in self.grid:
                raise ValueError(f"{name} is both fixed and gridded")
            if not fixed and name not in self.grid:
                raise ValueError(f"{name} is neither fixed nor gridded")
        return self

    def axis(self, name: AxialParameter) -> List[float]:
        if name in self.grid:
            return self.grid[name].values()
        return [float(getattr(self, name))]

    def points(self):
        return itertools.product(self.axis("alpha"), self.axis("gamma"), self.axis("beta"))


def parse_sweep_spec(document: Any) -> SweepSpec:
    if not isinstance(document, dict):
        raise SweepSpecError(f"sweep spec must be a mapping, got {type(document).__name__}")
    try:
        return SweepSpec.model_validate(document)
    except ValidationError as e:
        problems = "; ".join(f"{'.'.join(str(p) for p in err['loc'])}: {err['msg']}" for err in e.errors())
        raise SweepSpecError(f"invalid sweep spec: {problems}")


def load_sweep_spec(path: str) -> SweepSpec:
    try:
        document = read_yaml(path)
    except ValueError as e:
        raise SweepSpecError(f"cannot read sweep file {path}: {e}")
    return parse_sweep_spec(document)


def sweep_rows(spec: SweepSpec, app) -> List[Dict[str, Any]]:
    from qroof.bloch import State
    from qroof.capacity import hsw_capacity
    from qroof.channel import AxialParams, axial, classify_axial
    from qroof.concurrence import concurrence_form
    from qroof.entanglement import classify_phase, entanglement

    state = State.from_bloch(spec.state)
    rows = []
    for alpha, gamma, beta in spec.points():
        p = AxialParams(alpha=alpha, beta=beta, gamma=gamma)
        row: Dict[str, Any] = {"alpha": alpha, "beta": beta, "gamma": gamma}
        positive = classify_axial(p).is_positive
        m = axial(p) if positive else None
        for output in spec.outputs:
            if m is None:
                row[output] = "NotPositive" if output == "phase" else math.nan
            elif output == "phase":
                row[output] = classify_phase(p).value
            elif output == "concurrence":
                row[output] = concurrence_form(m).evaluate(state)
            elif output == "entanglement":
                row[output] = entanglement(m, state, base=app.base, oracle=app.oracle)
            else:
                row[output] = hsw_capacity(m, base=app.base, oracle=app.oracle, settings=app.capacity_settings).chi
        rows.append(row)
    return rows


def _options_document(
    ranges: Dict[str, Union[None, float, Dict[str, float]]],
    outputs: Tuple[str, ...],
    state,
) -> Dict[str, Any]:
    document: Dict[str, Any] = {"grid": {}}
    if outputs:
        document["outputs"] = list(outputs)
    if state is not None:
        document["state"] = state.bloch.tolist()
    for name, value in ranges.items():
        if isinstance(value, dict):
            document["grid"][name] = value
        elif value is not None:
            document[name] = value
    return document


@click.command(short_help="Evaluate the axial family on a parameter grid")
@click.option(
    "--spec",
    "spec_file",
    type=click.Path(exists=True, dir_okay=False),
    default=None,
    help="YAML/JSON sweep spec",
)
@click.option("--alpha", callback=parse_range, default=None, help="alpha value or grid min:max:step")
@click.option("--beta", callback=parse_range, default=None, help="beta value or grid min:max:step")
@click.option("--gamma", callback=parse_range, default=None, help="gamma value or grid min:max:step")
@click.option(
    "--output",
    "outputs",
    multiple=True,
    type=click.Choice(["concurrence", "entanglement", "capacity", "phase"]),
    help="Quantity per grid point (repeatable, default phase)",
)
@click.option("--state", "-s", "state", default=None, callback=parse_state, help="Bloch coordinates x,y,z")
@click.option("--out", "-o", type=click.Path(dir_okay=False), default=None, help="CSV file (stdout if omitted)")
@report_errors()
def sweep(
    ctx: click.Context,
    spec_file: Optional[str],
    alpha,
    beta,
    gamma,
    outputs: Tuple[str, ...],
    state,
    out: Optional[str],
):
    """
    Write a CSV with one row per grid point of the axial family and one column per requested
    output. Concurrence and entanglement are evaluated at --state (the center by default).
    """
    import pandas as pd

    ctx_obj: CliContext = ctx.obj
    ranges = {"alpha": alpha, "beta": beta, "gamma": gamma}
    has_options = any(value is not None for value in ranges.values()) or bool(outputs) or state is not None
    if spec_file is not None and has_options:
        raise click.UsageError("--spec cannot be combined with grid options")
    if spec_file is not None:
        spec = load_sweep_spec(spec_file)
    else:
        spec = parse_sweep_spec(_options_document(ranges, outputs, state))

    emit_frame(pd.DataFrame(sweep_rows(spec, ctx_obj.app)), out)
