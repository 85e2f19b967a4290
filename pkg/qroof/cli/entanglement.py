import click

from qroof.cli.util import CliContext, emit_record, parse_state, report_errors


@click.command(short_help="Entanglement entropy of a state under a map")
@click.argument("channel_file", type=click.Path(exists=True, dir_okay=False))
@click.option(
    "--state",
    "-s",
    "state",
    default="0,0,0",
    show_default=True,
    callback=parse_state,
    help="Bloch coordinates x,y,z of the input state",
)
@click.option(
    "--cross-check/--no-cross-check",
    default=True,
    show_default=True,
    help="Also search decompositions of length 4 when the oracle is needed",
)
@click.option("--json", "as_json", is_flag=True, default=False, help="Print a JSON object")
@report_errors()
def entanglement(ctx: click.Context, channel_file: str, state, cross_check: bool, as_json: bool):
    """Print E with the method used and the bounds xi(C) <= E <= C log 2."""
    from qroof.channel import load_channel_spec, require_positive
    from qroof.entanglement import entanglement_bounds, entanglement_detail

    ctx_obj: CliContext = ctx.obj
    app = ctx_obj.app
    m = load_channel_spec(channel_file)
    require_positive(m)
    value = entanglement_detail(m, state, base=app.base, oracle=app.oracle, cross_check=cross_check)
    lower, upper = entanglement_bounds(m, state, base=app.base)

    record = {
        "map": m.label,
        "E": value.value,
        "method": value.method,
        "C": value.concurrence,
        "xi(C)": lower,
        "C log 2": upper,
    }
    if as_json and value.roof is not None:
        record["roof"] = value.roof.to_dict()
    emit_record(record, as_json)
