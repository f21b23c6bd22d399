"""
Closed forms for the 2x2-periodic triangular example.

The 4x4 matrix in tri_proof_matrix uses the mirrored lattice orientation
(diagonal neighbour along (1, 1)). Its spectrum at (theta1, theta2) equals
the spectrum of build_floquet for the tri-2x2 builtin at (theta1, -theta2).
"""

import math
from typing import Optional, Tuple

import numpy as np
import scipy.linalg

from lattice_floquet.core.errors import ParameterRangeError
from lattice_floquet.lattice import LatticeKind, Periods
from lattice_floquet.potentials import PeriodicPotential, builtin, scaled
from lattice_floquet.spectral.floquet import FloquetPoint, ThetaLike, build_floquet
from lattice_floquet.verify.sweep import torus_extremum

TRI_GAP_MAX_LAMBDA = 0.5
TRI_POLY_MAX_A = 54.0


def tri_x(theta: ThetaLike) -> float:
    """X(theta) = -4 (sin t1 + sin t2 - sin(t1 + t2))^2."""
    t1, t2 = float(theta[0]), float(theta[1])
    return -4.0 * (math.sin(t1) + math.sin(t2) - math.sin(t1 + t2)) ** 2


def tri_w1(lam: float, eps: float) -> float:
    return -(lam ** 4) - 4 * lam ** 3 + 2 * eps * lam ** 3 + 12 * eps ** 2 * lam - 2 * eps ** 3 * (4 + lam) + eps ** 4


def tri_w2(lam: float, eps: float) -> float:
    """W1 - 16 eps (lam - eps)."""
    return tri_w1(lam, eps) - 16 * eps * (lam - eps)


def tri_w1_factored(lam: float, eps: float) -> float:
    return (lam - eps) ** 2 * (eps ** 2 - 8 * eps - lam ** 2 - 4 * lam)


def tri_w2_factored(lam: float, eps: float) -> float:
    return (eps - lam) * (eps - lam - 4) * (eps ** 2 - 4 * eps - lam ** 2)


def tri_det_poly(theta: ThetaLike, lam: float, eps: float) -> float:
    """
    Expansion of det(H_lambda(theta) - (-2 + eps) I) for the triangular example.

    Args:
        theta: Quasi-momentum in the mirrored orientation
        lam: Coupling
        eps: Offset from the exceptional energy -2

    Returns:
        X(theta) - 4 eps (lam - eps)(3 - cos t1 - cos t2 - cos(t1 + t2)) + W1(lam, eps)
    """
    t1, t2 = float(theta[0]), float(theta[1])
    c = 3.0 - math.cos(t1) - math.cos(t2) - math.cos(t1 + t2)
    return tri_x(theta) - 4 * eps * (lam - eps) * c + tri_w1(lam, eps)


def tri_proof_matrix(theta: ThetaLike, lam: float, eps: float) -> np.ndarray:
    """The explicit 4x4 matrix H_lambda(theta) + (2 - eps) I in the mirrored orientation."""
    t1, t2 = float(theta[0]), float(theta[1])
    e1, e2, e12 = np.exp(-1j * t1), np.exp(-1j * t2), np.exp(-1j * (t1 + t2))
    m = np.zeros((4, 4), dtype=complex)
    m[0, 1] = 1 + e1
    m[0, 2] = 1 + e2
    m[0, 3] = 1 + e12
    m[1, 2] = np.conj(e1) + e2
    m[1, 3] = 1 + e2
    m[2, 3] = 1 + e1
    m = m + m.conj().T
    d = 2.0 - eps
    m[np.diag_indices(4)] = (d + lam, d + lam, d + lam, d - lam)
    return m


def tri_det_numeric(
    theta: ThetaLike,
    lam: float,
    eps: float,
    potential: Optional[PeriodicPotential] = None,
) -> float:
    """det(H - (-2 + eps) I) from the assembled Floquet matrix at the mirrored point."""
    potential = scaled(potential or builtin("tri-2x2"), lam)
    h = build_floquet(
        LatticeKind.TRIANGULAR, Periods(2, 2), potential, (float(theta[0]), -float(theta[1]))
    )
    return float(scipy.linalg.det(h - (-2.0 + eps) * np.eye(4)).real)


def tri_gap_exact(lam: float) -> Tuple[float, float]:
    """
    The gap of the tri-2x2 example around -2.

    Args:
        lam: Coupling in (0, 0.5]

    Returns:
        (-sqrt(4 + lam^2), -2 + lam)

    Raises:
        ParameterRangeError: Outside (0, 0.5]
    """
    if not 0 < lam <= TRI_GAP_MAX_LAMBDA:
        raise ParameterRangeError("lambda", lam, f"0 < lambda <= {TRI_GAP_MAX_LAMBDA}")
    return (-math.sqrt(4.0 + lam * lam), -2.0 + lam)


def trig_poly(t1, t2, a: float):
    """g(theta, a) = 4 (sin t1 + sin t2 - sin(t1 + t2))^2 + a (1 + cos t1 + cos t2 + cos(t1 + t2))."""
    s = np.sin(t1) + np.sin(t2) - np.sin(t1 + t2)
    return 4 * s ** 2 + a * (1 + np.cos(t1) + np.cos(t2) + np.cos(t1 + t2))


def _check_a(a: float) -> None:
    if not 0 <= a <= TRI_POLY_MAX_A:
        raise ParameterRangeError("a", a, f"0 <= a <= {TRI_POLY_MAX_A:g}")


def trig_poly_nonneg(a: float, grid_n: int = 512) -> Tuple[float, FloquetPoint]:
    """Minimum of g(., a) over the torus and where it is attained."""
    _check_a(a)
    return torus_extremum(lambda t1, t2: trig_poly(t1, t2, a), grid_n)


def trig_poly_max(a: float, grid_n: int = 512) -> Tuple[float, FloquetPoint]:
    _check_a(a)
    return torus_extremum(lambda t1, t2: trig_poly(t1, t2, a), grid_n, largest=True)
