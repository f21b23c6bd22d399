"""Coefficient polynomials for the EHM 3x3 example around E = -1."""

import math
from typing import Optional

import numpy as np
from numpy.polynomial import Polynomial

from lattice_floquet.core.errors import ParameterRangeError, PotentialError
from lattice_floquet.lattice import LatticeKind
from lattice_floquet.potentials import PeriodicPotential, builtin
from lattice_floquet.spectral.floquet import ThetaLike, build_floquet
from lattice_floquet.verify.fitting import det_polynomial

_R15 = math.sqrt(15.0)

Y2 = 512 * Polynomial([20, 0, -9])
Y3 = 256 * Polynomial([4, -20, 0, 3])
Y4 = 16 * Polynomial([364, 144, -504, 0, 81])
Y5 = 16 * Polynomial([64, -196, -48, 104, 0, -9])
Y61 = Polynomial([176, 704, -3132, -496, 1376, 0, -96])
Y62 = Polynomial([-80, 96 * _R15 - 320, 1380 + 144 * _R15, 208, -(584 + 54 * _R15), 0, 42])
Y63 = Polynomial([-80, -(320 + 96 * _R15), 1380 - 144 * _R15, 208, -(584 - 54 * _R15), 0, 42])
Y64 = Polynomial([-16, -64, 372, 80, -208, 0, 12])
Y65 = 8 * Polynomial([-1, 2]) ** 3
Y8 = Polynomial([12, 32, -360, -512, 1025, 96, -224, 0, 9])
Y9 = Polynomial([0, 12, 16, -120, -128, 205, 16, -32, 0, 1])


def ehm_closed_form_coeffs(theta: ThetaLike, s: float) -> np.ndarray:
    """
    X_0..X_9 with det(H_lambda(theta) + (1 + s lambda) I) = sum_k X_k lambda^k.

    Args:
        theta: Quasi-momentum
        s: Relative offset

    Returns:
        Array of 10 coefficients
    """
    t1, t2 = float(theta[0]), float(theta[1])
    s2 = math.sin(t1 / 2) ** 2 * math.sin(t2 / 2) ** 2
    x6 = (
        Y61(s) + Y62(s) * math.cos(t1) + Y63(s) * math.cos(t2)
        + Y64(s) * math.cos(t1) * math.cos(t2) + Y65(s) * math.sin(t1) * math.sin(t2)
    )
    return np.array([
        4096 * s2 ** 3,
        0.0,
        Y2(s) * s2 ** 2,
        Y3(s) * s2 ** 2,
        Y4(s) * s2,
        Y5(s) * s2,
        x6,
        0.0,
        Y8(s),
        Y9(s),
    ])


def ehm_det_coeffs(
    theta: ThetaLike,
    s: float,
    potential: Optional[PeriodicPotential] = None,
    **fit_options,
) -> np.ndarray:
    """
    Fitted coefficients of det(H_lambda(theta) + (1 + s lambda) I) in lambda.

    Args:
        theta: Quasi-momentum
        s: Relative offset, |s| < 1
        potential: EHM potential (ehm-3x3 builtin by default)
        **fit_options: nodes / max_condition for fit_polynomial

    Returns:
        Coefficients in increasing powers of lambda
    """
    if not abs(s) < 1:
        raise ParameterRangeError("s", s, "|s| < 1")
    potential = potential or builtin("ehm-3x3")
    if potential.kind is not LatticeKind.EHM:
        raise PotentialError(f"expected an ehm potential, got {potential.kind.value}", field="lattice")
    base = build_floquet(LatticeKind.EHM, potential.periods, None, theta)
    return det_polynomial(
        base,
        np.diag(potential.as_array()),
        lambda lam: -(1.0 + s * lam),
        degree=base.shape[0],
        **fit_options,
    )


def ehm_y6_sum_residual() -> float:
    """Largest coefficient of Y61 + Y62 + Y63 + Y64, which vanishes identically."""
    total = Y61 + Y62 + Y63 + Y64
    return float(np.max(np.abs(total.coef)))


def ehm_y8_derivative_residual() -> float:
    """Largest coefficient of Y8 - Y9'."""
    diff = Y8 - Y9.deriv()
    return float(np.max(np.abs(diff.coef)))


def ehm_y9_root_residual(potential: Optional[PeriodicPotential] = None) -> float:
    """Y9(s) is prod_i (s + q_i); largest coefficient difference."""
    potential = potential or builtin("ehm-3x3")
    diff = Y9 - Polynomial.fromroots(-potential.as_array())
    return float(np.max(np.abs(diff.coef)))
