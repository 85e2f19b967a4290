from typing import List, Optional

import click

from qroof.cli.util import CliContext, emit_frame, emit_record, parse_grid, report_errors


@click.command(short_help="HSW capacity of a map, or a capacity curve along beta")
@click.argument("channel_file", type=click.Path(exists=True, dir_okay=False), required=False)
@click.option("--alpha", type=float, default=None, help="alpha of the axial family for a beta sweep")
@click.option("--gamma", type=float, default=None, help="gamma of the axial family for a beta sweep")
@click.option("--beta", "betas", callback=parse_grid, default=None, help="beta grid min:max:step")
@click.option("--profile", type=click.IntRange(min=0), default=0, help="Sample the Holevo quantity along the axis")
@click.option("--out", "-o", type=click.Path(dir_okay=False), default=None, help="CSV file for sweeps (stdout if omitted)")
@click.option("--json", "as_json", is_flag=True, default=False, help="Print a JSON object")
@report_errors()
def capacity(
    ctx: click.Context,
    channel_file: Optional[str],
    alpha: Optional[float],
    gamma: Optional[float],
    betas: Optional[List[float]],
    profile: int,
    out: Optional[str],
    as_json: bool,
):
    """
    With CHANNEL_FILE print the capacity and the input state achieving it.
    With --alpha, --gamma and --beta write a CSV of (beta, chi, phase, argmax_z).
    """
    import pandas as pd

    from qroof.capacity import capacity_sweep, hsw_capacity
    from qroof.channel import load_channel_spec

    ctx_obj: CliContext = ctx.obj
    sweeping = any(value is not None for value in (alpha, gamma, betas))
    if channel_file is not None and sweeping:
        raise click.UsageError("give either CHANNEL_FILE or --alpha/--gamma/--beta, not both")
    if channel_file is None and not sweeping:
        raise click.UsageError("give CHANNEL_FILE or a sweep with --alpha, --gamma and --beta")

    app = ctx_obj.app
    if channel_file is not None:
        m = load_channel_spec(channel_file)
        result = hsw_capacity(
            m,
            base=app.base,
            oracle=app.oracle,
            settings=app.capacity_settings,
            profile_points=profile,
        )
        if as_json:
            emit_record({"map": m.label, **result.to_dict()}, as_json=True)
        else:
            emit_record(
                {
                    "map": m.label,
                    "chi": result.chi,
                    "argmax": ", ".join(f"{c:.9g}" for c in result.argmax_state.bloch),
                    "method": result.method,
                },
                as_json=False,
            )
            if result.profile is not None:
                emit_frame(pd.DataFrame(result.profile, columns=["z", "chi"]), None)
        return

    if alpha is None or gamma is None or betas is None:
        raise click.UsageError("a sweep needs --alpha, --gamma and --beta")
    points = capacity_sweep(alpha, gamma, betas, base=app.base, budget=app.budget, settings=app.capacity_settings)
    emit_frame(pd.DataFrame([point.to_dict() for point in points]), out)
