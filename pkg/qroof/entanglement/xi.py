from typing import Tuple, Union

import numpy as np

from qroof.bloch import binary_entropy
from qroof.utils import QRoofError

Number = Union[float, np.ndarray]

XI_DOMAIN_SLACK = 1e-12
_SERIES_Y = 1e-4


class DomainError(QRoofError):
    pass


def _check_domain(x: np.ndarray) -> np.ndarray:
    if np.any(np.abs(x) > 1.0 + XI_DOMAIN_SLACK):
        worst = float(np.max(np.abs(x)))
        raise DomainError(f"xi is defined on [-1, 1], got |x|={worst:.12g}")
    return np.clip(x, -1.0, 1.0)


def xi(x: Number, base: float = 2.0) -> Number:
    """
    Entropy of a pure-state output with concurrence x: H((1 - y) / 2, (1 + y) / 2), y = sqrt(1 - x^2).

    Converts concurrence to entanglement entropy on flat roof points.
    """
    x = _check_domain(np.asarray(x, dtype=float))
    y = np.sqrt(1.0 - x * x)
    # (1 - y) / 2 without cancellation for small |x|
    p = x * x / (2.0 * (1.0 + y))
    return binary_entropy(p, base)


def xi_many(xs: np.ndarray, base: float = 2.0) -> np.ndarray:
    return np.asarray(xi(np.asarray(xs, dtype=float), base), dtype=float).reshape(np.shape(xs))


def xi_second_derivative(x: Number) -> Number:
    """
    Closed form of xi'' in natural-log units: artanh(y) / y^3 - 1 / y^2 with y = sqrt(1 - x^2).

    Diverges at x = 0; tends to 1/3 at |x| = 1, where the series 1/3 + y^2/5 + y^4/7 is used.
    """
    x = _check_domain(np.asarray(x, dtype=float))
    y = np.sqrt(1.0 - x * x)
    with np.errstate(divide="ignore", invalid="ignore"):
        closed = np.arctanh(y) / y**3 - 1.0 / y**2
    series = 1.0 / 3.0 + y**2 / 5.0 + y**4 / 7.0
    value = np.where(y < _SERIES_Y, series, np.where(y >= 1.0, np.inf, closed))
    return float(value) if np.ndim(value) == 0 else value


def xi_convexity_certificate(n: int = 397, h: float = 1e-4) -> Tuple[float, float]:
    """
    Compare xi'' with central finite differences on a grid of [-0.99, 0.99] without (-0.01, 0.01).

    :return: (largest |finite difference - closed form|, smallest closed-form value).
    """
    if n < 3:
        raise ValueError(f"the certificate needs at least 3 grid points, got {n}")
    grid = np.linspace(-0.99, 0.99, n)
    grid = grid[np.abs(grid) >= 0.01 - 1e-12]
    nats = float(np.e)
    finite = (xi(grid + h, nats) - 2.0 * xi(grid, nats) + xi(grid - h, nats)) / (h * h)
    closed = xi_second_derivative(grid)
    return float(np.max(np.abs(finite - closed))), float(np.min(closed))
