from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import wraps
from typing import TYPE_CHECKING, Any, Callable, Dict, List, Optional, Union

import click
import numpy as np

if TYPE_CHECKING:
    import pandas as pd

    from qroof.app import QRoofApp
    from qroof.bloch import State

CSV_FLOAT_FORMAT = "%.9g"


@dataclass
class CliContext:
    workspace: Optional[str]
    workspace_param: Optional[str]
    is_workspace_valid: bool
    is_workspace_empty: bool
    overrides: Dict[str, Any] = field(default_factory=dict)
    _app: Optional[QRoofApp] = None

    @property
    def app(self) -> QRoofApp:
        """The app is built on first use so that `--help` and `--version` never read config."""
        if self._app is None:
            from qroof.app import QRoofApp

            self._app = QRoofApp(app_dir=self.workspace_param, overrides=self.overrides)
            self._app.start()
        return self._app


def report_errors():
    """Turn library errors into a one-line message and an exit code: 2 usage, 3 not positive, 1 other."""

    def report_errors_inner(f: Callable[..., None]):
        @wraps(f)
        @click.pass_context
        def new_func(ctx: click.Context, *args: Any, **kwargs: Any):
            from qroof.channel import ChannelSpecError, NotPositive
            from qroof.cli.sweep import SweepSpecError
            from qroof.utils import QRoofError

            try:
                return f(ctx, *args, **kwargs)
            except NotPositive as e:
                click.echo(f"Error: the map is not positive: {e.reason}", err=True)
                ctx.exit(3)
            except (ChannelSpecError, SweepSpecError, ValueError, OSError) as e:
                click.echo(f"Error: {e}", err=True)
                ctx.exit(2)
            except QRoofError as e:
                click.echo(f"Error: {type(e).__name__}: {e}", err=True)
                ctx.exit(1)

        return new_func

    return report_errors_inner


def parse_seed(ctx: click.Context, param: Any, value: Optional[str]) -> Optional[int]:
    if value is None:
        return None
    try:
        seed = int(value, 0)
    except ValueError:
        raise click.BadParameter(f"{value!r} is not an integer (hex like 0x5EED is accepted)")
    if seed < 0:
        raise click.BadParameter("the seed must be non-negative")
    return seed


def parse_state(ctx: click.Context, param: Any, value: Optional[str]) -> Optional[State]:
    """`x,y,z` Bloch coordinates of a state inside the ball."""
    from qroof.bloch import State
    from qroof.utils import QRoofError

    if value is None:
        return None
    try:
        coords = [float(part) for part in value.split(",")]
    except ValueError:
        raise click.BadParameter(f"{value!r} is not a comma separated triple of numbers")
    if len(coords) != 3:
        raise click.BadParameter(f"expected 3 Bloch coordinates, got {len(coords)}")
    try:
        return State.from_bloch(coords)
    except QRoofError as e:
        raise click.BadParameter(str(e))


def grid_values(start: float, stop: float, step: float) -> np.ndarray:
    """start, start + step, ... up to and including stop (within rounding)."""
    if not step > 0:
        raise ValueError(f"grid step must be positive, got {step}")
    if not start < stop:
        raise ValueError(f"grid needs min < max, got {start} >= {stop}")
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    return np.round(start + step * np.arange(count), 12)


def parse_range(ctx: click.Context, param: Any, value: Optional[str]) -> Union[None, float, Dict[str, float]]:
    """A single number, or `min:max:step` returned as {"min", "max", "step"}."""
    if value is None:
        return None
    try:
        numbers = [float(part) for part in value.split(":")]
    except ValueError:
        raise click.BadParameter(f"{value!r} is neither a number nor min:max:step")
    if len(numbers) == 1:
        return numbers[0]
    if len(numbers) != 3:
        raise click.BadParameter(f"{value!r} is neither a number nor min:max:step")
    return dict(zip(("min", "max", "step"), numbers))


def parse_grid(ctx: click.Context, param: Any, value: Optional[str]) -> Optional[List[float]]:
    """A single number or `min:max:step`, expanded to the grid values."""
    parsed = parse_range(ctx, param, value)
    if parsed is None or isinstance(parsed, float):
        return None if parsed is None else [parsed]
    try:
        return grid_values(parsed["min"], parsed["max"], parsed["step"]).tolist()
    except ValueError as e:
        raise click.BadParameter(str(e))


def emit_frame(df: pd.DataFrame, out: Optional[str]) -> None:
    """Write a table as CSV to `out`, or to stdout when `out` is None or '-'."""
    kwargs: Dict[str, Any] = {
        "float_format": CSV_FLOAT_FORMAT,
        "index": False,
        "na_rep": "nan",
        "lineterminator": "\n",
    }
    if out is None or out == "-":
        click.echo(df.to_csv(**kwargs), nl=False)
        return
    df.to_csv(out, **kwargs)
    click.echo(f"wrote {len(df)} rows to {click.format_filename(out)}", err=True)


def emit_record(record: Dict[str, Any], as_json: bool) -> None:
    from qroof.utils import json_dumps

    if as_json:
        click.echo(json_dumps(record))
        return
    for key, value in record.items():
        if isinstance(value, float):
            value = f"{value:.9g}"
        click.echo(f"{key}: {value}")
