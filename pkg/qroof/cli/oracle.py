from typing import Optional

import click

from qroof.cli.util import CliContext, emit_record, parse_state, report_errors


@click.command(short_help="Brute-force convex roof of a map at a state")
@click.argument("channel_file", type=click.Path(exists=True, dir_okay=False))
@click.option(
    "--state",
    "-s",
    "state",
    default="0,0,0",
    show_default=True,
    callback=parse_state,
    help="Bloch coordinates x,y,z of a mixed input state",
)
@click.option(
    "--functional",
    "-f",
    type=click.Choice(["concurrence", "entropy"]),
    default="concurrence",
    show_default=True,
    help="Pure-state function whose roof is minimized",
)
@click.option("--max-length", type=click.IntRange(2, 4), default=3, show_default=True, help="Longest decomposition")
@click.option("--dump", type=click.Path(dir_okay=False), default=None, help="Write the decomposition as JSON")
@click.option("--json", "as_json", is_flag=True, default=False, help="Print a JSON object")
@report_errors()
def oracle(
    ctx: click.Context,
    channel_file: str,
    state,
    functional: str,
    max_length: int,
    dump: Optional[str],
    as_json: bool,
):
    """Print the oracle minimum next to the closed form so the two can be audited."""
    from qroof.channel import load_channel_spec, require_positive
    from qroof.concurrence import concurrence_form
    from qroof.entanglement import entanglement_bounds
    from qroof.roof_oracle import concurrence_functional, entropy_functional

    ctx_obj: CliContext = ctx.obj
    app = ctx_obj.app
    m = load_channel_spec(channel_file)
    require_positive(m)

    if functional == "concurrence":
        g = concurrence_functional(m)
        analytic = {"closed_form": concurrence_form(m).evaluate(state)}
    else:
        g = entropy_functional(m, app.base)
        lower, upper = entanglement_bounds(m, state, base=app.base)
        analytic = {"xi(C)": lower, "C log 2": upper}

    result = app.oracle.minimize(state, g, max_length=max_length)
    if dump is not None:
        app.logger.dump_log_file(result, dump)

    if as_json:
        emit_record({"map": m.label, "functional": g.name, **analytic, "roof": result.to_dict()}, as_json=True)
        return
    emit_record(
        {
            "map": m.label,
            "functional": g.name,
            "value": result.value,
            **analytic,
            "flat": result.flat,
            "length": result.decomposition.length,
        },
        as_json=False,
    )
    for weight, member in result.decomposition.members:
        click.echo(f"  p={weight:.9g} direction={', '.join(f'{c:.9g}' for c in member.direction)}")
