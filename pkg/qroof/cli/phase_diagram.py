import math
from typing import Any, Dict, List, Optional

import click

from qroof.cli.util import emit_frame, parse_grid, report_errors

NOT_POSITIVE_LABEL = "NotPositive"


def phase_row(alpha: float, gamma: float, beta: float) -> Dict[str, Any]:
    from qroof.channel import AxialParams, classify_axial
    from qroof.entanglement import DegenerateFamily, bifurcation_betas, classify_phase

    p = AxialParams(alpha=alpha, beta=beta, gamma=gamma)
    row: Dict[str, Any] = {
        "gamma": gamma,
        "beta": beta,
        "phase": NOT_POSITIVE_LABEL,
        "beta_c": p.beta_c,
        "beta1": math.nan,
        "beta2": math.nan,
        "beta_max": p.beta_max,
    }
    try:
        betas = bifurcation_betas(alpha, gamma)
    except DegenerateFamily:
        betas = None
    else:
        row["beta1"] = betas.beta1
        row["beta2"] = betas.beta2
    if classify_axial(p).is_positive:
        row["phase"] = classify_phase(p, betas).value
    return row


@click.command(name="phase-diagram", short_help="Phase labels of the axial family on a (gamma, beta) grid")
@click.option("--alpha", type=float, required=True, help="alpha of the axial family")
@click.option("--gamma", "gammas", callback=parse_grid, required=True, help="gamma grid min:max:step")
@click.option("--beta", "betas", callback=parse_grid, required=True, help="beta grid min:max:step")
@click.option("--out", "-o", type=click.Path(dir_okay=False), default=None, help="CSV file (stdout if omitted)")
@report_errors()
def phase_diagram(
    ctx: click.Context,
    alpha: float,
    gammas: List[float],
    betas: List[float],
    out: Optional[str],
):
    """
    Write one CSV row per grid point with the phase and the boundary curves
    beta_c, beta1, beta2, beta_max at that gamma. Points outside the positive
    maps are labelled NotPositive.
    """
    import pandas as pd

    rows = [phase_row(alpha, gamma, beta) for gamma in gammas for beta in betas]
    emit_frame(pd.DataFrame(rows), out)
