import click

from qroof.cli.util import CliContext, emit_record, parse_state, report_errors


@click.command(short_help="Concurrence of a state under a map")
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
@click.option("--json", "as_json", is_flag=True, default=False, help="Print a JSON object")
@report_errors()
def concurrence(ctx: click.Context, channel_file: str, state, as_json: bool):
    """Print C, the critical w0, the eigen flow and the foliation of the optimal decompositions."""
    from qroof.channel import load_channel_spec, require_positive
    from qroof.concurrence import concurrence_form, foliation_of

    ctx_obj: CliContext = ctx.obj
    m = load_channel_spec(channel_file)
    positivity = require_positive(m)
    form = concurrence_form(m)
    fol = foliation_of(form)
    ctx_obj.app.logger.debug(f"concurrence of {m!r} at {state.bloch.tolist()}")

    if as_json:
        emit_record(
            {
                "map": m.label,
                "positivity": str(positivity),
                "C": form.evaluate(state),
                "w0": form.w0,
                "flow": list(form.w_flow),
                "foliation": fol.to_dict(),
            },
            as_json=True,
        )
        return
    emit_record(
        {
            "map": m.label,
            "positivity": str(positivity),
            "C": form.evaluate(state),
            "w0": form.w0,
            "flow": ", ".join(f"{w:.9g}" for w in form.w_flow),
            "foliation": fol.tag,
            "leaves": fol.describe(),
        },
        as_json=False,
    )
