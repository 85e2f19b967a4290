from typing import Any, Callable, Dict, Optional, cast

import numpy as np
import pytest


@pytest.fixture()
def app_injector(request: pytest.FixtureRequest):
    from injector import Injector

    from qroof.config.config_mgt import AppConfigSource
    from qroof.logging import LoggingModule
    from qroof.roof_oracle import RoofOracleModule

    config: Dict[str, Any] = {}

    # default fixture provider: a small oracle budget on one thread
    config["qroof.threads"] = 1
    config["qroof.direction_grid"] = 400
    config["qroof.circle_grid"] = 180
    config["qroof.nm_iterations"] = 120
    config["qroof.nm_iterations_high"] = 400
    config["qroof.triangle_seeds"] = 1500
    config["qroof.refine_top"] = 3

    # extra ones from marker
    extra_config_marker = cast(
        Optional[pytest.Mark],
        request.node.get_closest_marker("app_config"),
    )
    if extra_config_marker:
        extra_config = extra_config_marker.args[0]
        if type(extra_config) is dict:
            config.update(extra_config)
        else:
            raise Exception("app_config marker must be a dict")

    app_injector = Injector(
        [LoggingModule, RoofOracleModule],
    )
    app_config = AppConfigSource(
        config=config,
    )
    app_injector.binder.bind(AppConfigSource, to=app_config)
    return app_injector


@pytest.fixture()
def small_budget():
    from qroof.roof_oracle import Budget

    return Budget(
        threads=1,
        direction_grid=400,
        circle_grid=180,
        nm_iterations=120,
        nm_iterations_high=400,
        triangle_seeds=1500,
        refine_top=3,
    )


@pytest.fixture()
def rng() -> np.random.Generator:
    return np.random.default_rng(0x5EED)


def _random_channel(rng: np.random.Generator):
    """A completely positive map from a random isometry C^2 -> C^2 (x) C^3 traced over the environment."""
    from scipy.stats import unitary_group

    from qroof.bloch import PAULI
    from qroof.channel import QubitMap

    u = unitary_group.rvs(6, random_state=rng)
    isometry = u[:, :2]

    def act(op: np.ndarray) -> np.ndarray:
        joint = (isometry @ op @ isometry.conj().T).reshape(2, 3, 2, 3)
        return np.einsum("ajbj->ab", joint)

    images = np.stack([act(PAULI[j]) for j in range(4)])
    transfer = np.real(np.einsum("iab,jba->ij", PAULI, images)) / 2.0
    return QubitMap(lam=transfer[1:, 1:], t=transfer[1:, 0], label="random")


@pytest.fixture()
def random_channel(rng: np.random.Generator) -> Callable[[], Any]:
    return lambda: _random_channel(rng)


def _random_axial(rng: np.random.Generator):
    from qroof.channel import AxialParams

    while True:
        alpha, gamma = rng.uniform(0.0, 1.0, size=2)
        p = AxialParams(alpha=float(alpha), beta=0.0, gamma=float(gamma))
        if abs(alpha - gamma) < 1e-3 or abs(alpha + gamma - 1.0) < 1e-3:
            continue
        beta = float(rng.uniform(0.0, p.beta_max))
        return AxialParams(alpha=float(alpha), beta=beta, gamma=float(gamma))


@pytest.fixture()
def random_axial(rng: np.random.Generator) -> Callable[[], Any]:
    return lambda: _random_axial(rng)


@pytest.fixture()
def random_state(rng: np.random.Generator) -> Callable[[], Any]:
    from qroof.bloch import State

    def make(max_radius: float = 0.95):
        direction = rng.normal(size=3)
        direction /= np.linalg.norm(direction)
        return State.from_bloch(direction * max_radius * rng.uniform() ** (1.0 / 3.0))

    return make
