import click

from .capacity import capacity
from .concurrence import concurrence
from .entanglement import entanglement
from .oracle import oracle
from .phase_diagram import phase_diagram
from .sweep import sweep
from .util import CliContext, parse_seed

_qroof_version: str = __import__("qroof").__version__


@click.group(
    name="qroof",
    help="Concurrence, entanglement entropy and HSW capacity of positive qubit maps.",
    invoke_without_command=True,
    commands=[concurrence, entanglement, capacity, phase_diagram, sweep, oracle],
)
@click.pass_context
@click.version_option(version=_qroof_version, prog_name="qroof")
@click.option(
    "--project",
    "-p",
    help="Path to the project directory holding qroof_config.json",
    type=click.Path(
        file_okay=False,
        dir_okay=True,
        resolve_path=True,
    ),
    required=False,
    default=None,
)
@click.option("--seed", callback=parse_seed, default=None, help="Seed of the roof oracle (default 0x5EED)")
@click.option("--base", type=click.Choice(["2", "e"]), default=None, help="Logarithm base of entropies (default 2)")
@click.option("--threads", type=click.IntRange(min=1), default=None, help="Worker threads (default: CPU count)")
def qroof(ctx: click.Context, project: str, seed: int, base: str, threads: int):
    from qroof.utils.app_utils import discover_app_dir

    workspace_base, is_valid, is_empty = discover_app_dir(project)

    ctx.obj = CliContext(
        workspace=workspace_base,
        workspace_param=project,
        is_workspace_valid=is_valid,
        is_workspace_empty=is_empty,
        overrides={"qroof.seed": seed, "qroof.base": base, "qroof.threads": threads},
    )
    if not ctx.invoked_subcommand:
        click.echo(ctx.get_help())
