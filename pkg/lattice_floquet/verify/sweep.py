"""Grid search plus Nelder-Mead polish for trigonometric functions on the torus."""

from typing import Callable, Tuple

import numpy as np
from scipy.optimize import minimize

from lattice_floquet.core.errors import ParameterRangeError
from lattice_floquet.spectral.floquet import FloquetPoint

TorusFunction = Callable[[np.ndarray, np.ndarray], np.ndarray]


def wrap_angle(value: float) -> float:
    """Reduce into [0, 2 pi), snapping values within 1e-9 of 2 pi to 0."""
    wrapped = float(np.mod(value, 2 * np.pi))
    if wrapped > 2 * np.pi - 1e-9:
        wrapped = 0.0
    return wrapped


def torus_extremum(
    fn: TorusFunction,
    grid_n: int,
    largest: bool = False,
    tol: float = 1e-12,
) -> Tuple[float, FloquetPoint]:
    """
    Global minimum (or maximum) of a vectorised function on [0, 2 pi)^2.

    Args:
        fn: Function of two broadcastable angle arrays
        grid_n: Samples per direction
        largest: Search for the maximum instead
        tol: Nelder-Mead xatol for the polish

    Returns:
        (value, argument)
    """
    if grid_n < 4:
        raise ParameterRangeError("grid_n", grid_n, ">= 4")
    sign = -1.0 if largest else 1.0
    t = 2 * np.pi * np.arange(grid_n) / grid_n
    g1, g2 = np.meshgrid(t, t, indexing="ij")
    values = sign * np.asarray(fn(g1, g2), dtype=float)
    i, j = np.unravel_index(int(np.argmin(values)), values.shape)
    start = np.array([t[i], t[j]])
    best_f = float(values[i, j])

    step = 2 * np.pi / grid_n
    result = minimize(
        lambda p: sign * float(fn(np.array(p[0]), np.array(p[1]))),
        start,
        method="Nelder-Mead",
        options={
            "initial_simplex": np.array([start, start + [step, 0.0], start + [0.0, step]]),
            "xatol": tol,
            "fatol": tol,
            "maxiter": 4000,
        },
    )
    if result.fun < best_f:
        start, best_f = result.x, float(result.fun)
    return sign * best_f, FloquetPoint(wrap_angle(start[0]), wrap_angle(start[1]))
