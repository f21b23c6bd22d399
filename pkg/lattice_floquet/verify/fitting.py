"""Polynomial coefficients of lambda -> det(...) from exact evaluations."""

import logging
from typing import Callable, Optional

import numpy as np
import scipy.linalg

from lattice_floquet.core.config import get_default_config
from lattice_floquet.core.errors import FitError

logger = logging.getLogger(__name__)


def circle_nodes(degree: int, radius: float) -> np.ndarray:
    """degree + 1 equally spaced points on |lambda| = radius."""
    n = degree + 1
    return radius * np.exp(2j * np.pi * np.arange(n) / n)


def line_nodes(degree: int, spacing: float) -> np.ndarray:
    """Real nodes 0, spacing, 2 spacing, ..."""
    return spacing * np.arange(degree + 1, dtype=float)


def fit_polynomial(
    fn: Callable[[complex], complex],
    degree: int,
    nodes: Optional[np.ndarray] = None,
    max_condition: Optional[float] = None,
) -> np.ndarray:
    """
    Coefficients c_0..c_degree of a polynomial known to have the given degree.

    Args:
        fn: The polynomial, evaluated exactly (e.g. a determinant)
        degree: Its degree
        nodes: degree + 1 distinct nodes; circle_nodes(degree, radius) by default
        max_condition: Largest acceptable Vandermonde condition number

    Returns:
        Real parts of the coefficients in increasing powers

    Raises:
        FitError: If the Vandermonde system is too ill-conditioned
    """
    fit_cfg = get_default_config()["fit"]
    if nodes is None:
        nodes = circle_nodes(degree, fit_cfg["radius"])
    if max_condition is None:
        max_condition = fit_cfg["max_condition"]
    nodes = np.asarray(nodes)
    if len(nodes) != degree + 1:
        raise FitError(f"need {degree + 1} nodes for degree {degree}, got {len(nodes)}", condition=float("nan"))

    vander = np.vander(nodes, degree + 1, increasing=True)
    condition = float(np.linalg.cond(vander))
    if condition > max_condition:
        raise FitError(
            f"Vandermonde condition number {condition:.3e} exceeds {max_condition:.1e}; "
            "use nodes spread over a circle or a smaller lambda range",
            condition=condition,
        )
    values = np.array([fn(node) for node in nodes], dtype=complex)
    coeffs = scipy.linalg.solve(vander, values)
    logger.debug("Fitted degree %d polynomial (cond %.2e)", degree, condition)
    return coeffs.real


def det_polynomial(
    base: np.ndarray,
    direction: np.ndarray,
    shift: Callable[[complex], complex],
    degree: int,
    **kwargs,
) -> np.ndarray:
    """
    Coefficients of lambda -> det(base + lambda * direction - shift(lambda) I).

    Args:
        base: Matrix at lambda = 0
        direction: Matrix multiplying lambda
        shift: Spectral shift as a polynomial in lambda
        degree: Degree in lambda
        **kwargs: Passed to fit_polynomial

    Returns:
        Coefficients in increasing powers of lambda
    """
    eye = np.eye(base.shape[0])
    return fit_polynomial(
        lambda lam: scipy.linalg.det(base + lam * direction - shift(lam) * eye),
        degree,
        **kwargs,
    )
