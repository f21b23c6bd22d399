"""
Determinant expansions and gap bounds for the hexagonal examples.

hex_det_coeffs expands det(H_lambda(theta) - (E0 + s lambda^d) I) for the
hex-2x2 builtin around E0 in {1, -1, 0}; d is 2 at +-1 and 1 at 0. Only the
powers with published closed forms are compared.
"""

import logging
from enum import Enum
from typing import Dict, Iterable, Optional

import numpy as np
import scipy.linalg

from lattice_floquet.core.errors import ParameterRangeError, PotentialError
from lattice_floquet.lattice import LatticeKind, Periods
from lattice_floquet.potentials import PeriodicPotential, builtin, scaled
from lattice_floquet.spectral.bands import GridSpec, band_edges, gap_at, spectrum
from lattice_floquet.spectral.eigen import eigvalsh
from lattice_floquet.spectral.floquet import (
    ThetaLike,
    build_floquet,
    sublattice_permutation,
)
from lattice_floquet.verify.fitting import det_polynomial
from lattice_floquet.verify.sweep import torus_extremum

logger = logging.getLogger(__name__)

HEX_PERIODS = Periods(2, 2)


class HexCenter(str, Enum):
    PLUS1 = "plus1"
    MINUS1 = "minus1"
    ZERO = "zero"

    @property
    def energy(self) -> float:
        return {"plus1": 1.0, "minus1": -1.0, "zero": 0.0}[self.value]

    @property
    def shift_power(self) -> int:
        return 1 if self is HexCenter.ZERO else 2


def _cos_sum(t1, t2):
    return np.cos(t1) + np.cos(t1 - t2) + np.cos(t2)


def hex_x0(theta: ThetaLike) -> float:
    t1, t2 = theta
    return float(-4 * (-np.sin(t1) + np.sin(t1 - t2) + np.sin(t2)) ** 2)


def hex_x4(theta: ThetaLike, s: float, sign: int) -> float:
    t1, t2 = theta
    return float(8 * (s + sign) * (2 * s - sign) * (3 - _cos_sum(t1, t2)))


def hex_x6(theta: ThetaLike, s: float, sign: int) -> float:
    t1, t2 = theta
    return float(
        -1 - sign * 12 * s + 72 * s ** 2 - sign * 16 * s ** 3
        - 4 * s ** 2 * (sign * 4 * s + 1) * _cos_sum(t1, t2)
    )


def hex_y0_grid(t1, t2):
    """Y0 on broadcast angle arrays."""
    return (
        15 + 2 * np.cos(2 * t1) - 4 * np.cos(t1 - 2 * t2) + 2 * np.cos(2 * t1 - 2 * t2)
        - 4 * np.cos(2 * t1 - t2) + 2 * np.cos(2 * t2) - 4 * np.cos(t1 + t2)
    )


def hex_y0(theta: ThetaLike) -> float:
    return float(hex_y0_grid(theta[0], theta[1]))


def hex_y2(theta: ThetaLike, s: float) -> float:
    return float(2 * (5 - 26 * s ** 2 + (2 + 4 * s ** 2) * _cos_sum(theta[0], theta[1])))


def hex_y4(theta: ThetaLike, s: float) -> float:
    return float((1 - s ** 2) * (-3 - 42 * s ** 2 + 4 * (2 + s ** 2) * _cos_sum(theta[0], theta[1])))


def hex_closed_form_coeffs(theta: ThetaLike, s: float, center: HexCenter) -> Dict[int, float]:
    """Published coefficients keyed by power of lambda."""
    center = HexCenter(center)
    if center is HexCenter.ZERO:
        return {0: hex_y0(theta), 2: hex_y2(theta, s), 4: hex_y4(theta, s)}
    sign = 1 if center is HexCenter.PLUS1 else -1
    return {0: hex_x0(theta), 4: hex_x4(theta, s, sign), 6: hex_x6(theta, s, sign)}


def _hex_potential(potential: Optional[PeriodicPotential]) -> PeriodicPotential:
    potential = potential or builtin("hex-2x2")
    if potential.kind is not LatticeKind.HEXAGONAL:
        raise PotentialError(f"expected a hexagonal potential, got {potential.kind.value}", field="lattice")
    return potential


def hex_det_coeffs(
    theta: ThetaLike,
    s: float,
    center: HexCenter,
    potential: Optional[PeriodicPotential] = None,
    **fit_options,
) -> np.ndarray:
    """
    Fitted coefficients of det(H_lambda(theta) - (E0 + s lambda^d) I) in lambda.

    Args:
        theta: Quasi-momentum
        s: Relative offset, |s| <= 1
        center: plus1, minus1 or zero
        potential: Hexagonal potential (hex-2x2 builtin by default)
        **fit_options: nodes / max_condition for fit_polynomial

    Returns:
        Coefficients in increasing powers of lambda
    """
    if abs(s) > 1:
        raise ParameterRangeError("s", s, "|s| <= 1")
    center = HexCenter(center)
    potential = _hex_potential(potential)
    base = build_floquet(LatticeKind.HEXAGONAL, potential.periods, None, theta)
    power = center.shift_power
    e0 = center.energy
    return det_polynomial(
        base,
        np.diag(potential.as_array()),
        lambda lam: e0 + s * lam ** power,
        degree=base.shape[0] * power,
        **fit_options,
    )


def hex_Y0_nonneg(grid_n: int = 512):
    """Minimum of Y0 over the torus and its location."""
    return torus_extremum(hex_y0_grid, grid_n)


def hex_y0_determinant(theta: ThetaLike) -> float:
    """det H_0(theta) of the free 2x2-periodic hexagonal matrix; equals Y0(theta)."""
    h = build_floquet(LatticeKind.HEXAGONAL, HEX_PERIODS, None, theta)
    return float(scipy.linalg.det(h).real)


def hex_linear_coeffs(
    potential: PeriodicPotential,
    theta: ThetaLike,
    s: float,
    center: HexCenter,
    **fit_options,
) -> np.ndarray:
    """Fitted coefficients of det(H_lambda(theta) - (E0 + s lambda) I), a linear energy shift."""
    center = HexCenter(center)
    potential = _hex_potential(potential)
    base = build_floquet(LatticeKind.HEXAGONAL, potential.periods, None, theta)
    e0 = center.energy
    return det_polynomial(
        base,
        np.diag(potential.as_array()),
        lambda lam: e0 + s * lam,
        degree=base.shape[0],
        **fit_options,
    )


def _kernel_compression(potential: PeriodicPotential, center: HexCenter):
    """(pseudo-determinant of H_0(0) - E0, basis of its kernel)."""
    base = build_floquet(LatticeKind.HEXAGONAL, potential.periods, None, (0.0, 0.0))
    shifted = base - center.energy * np.eye(base.shape[0])
    kernel = scipy.linalg.null_space(shifted, rcond=1e-10)
    values = eigvalsh(shifted)
    pdet = float(np.prod(values[np.abs(values) > 1e-9]))
    return pdet, kernel


def hex_x3_leading(potential: PeriodicPotential, s: float, center: HexCenter) -> float:
    """
    First non-vanishing coefficient of the linear-shift determinant at theta = 0.

    The free matrix at theta = 0 has a triple eigenvalue at +-1, so the
    lambda^0..lambda^2 terms vanish and the lambda^3 term is
    pdet(H_0 - E0) * det(V^H (Q - s) V) with V spanning the kernel.
    """
    center = HexCenter(center)
    if center is HexCenter.ZERO:
        raise ParameterRangeError("center", center.value, "plus1 or minus1")
    potential = _hex_potential(potential)
    pdet, kernel = _kernel_compression(potential, center)
    compressed = kernel.conj().T @ (np.diag(potential.as_array()) - s * np.eye(len(potential.values))) @ kernel
    return float(pdet * scipy.linalg.det(compressed).real)


def hex_x3_roots(potential: PeriodicPotential, center: HexCenter) -> np.ndarray:
    """
    Real roots s of the lambda^3 coefficient: eigenvalues of the compressed potential.

    Each root s* gives E0 + s* lambda in the spectrum to first order, which
    rules out gaps of linear order at E0.
    """
    center = HexCenter(center)
    potential = _hex_potential(potential)
    _, kernel = _kernel_compression(potential, center)
    return eigvalsh(kernel.conj().T @ np.diag(potential.as_array()) @ kernel)


def hex_linear_gap_impossibility(
    potential: PeriodicPotential,
    c: float,
    lambdas: Iterable[float],
    grid: Optional[GridSpec] = None,
    threads: Optional[int] = None,
) -> bool:
    """
    Whether the spectrum meets (-1 - c lam, -1 + c lam) or (1 - c lam, 1 + c lam) for every lam.

    Args:
        potential: Potential on hexagonal periods (2, 2)
        c: Window slope, positive
        lambdas: Couplings to test
        grid: Sampling grid

    Returns:
        True iff every tested coupling has spectrum inside the windows
    """
    if not c > 0:
        raise ParameterRangeError("c", c, "a positive number")
    potential = _hex_potential(potential)
    if potential.periods != HEX_PERIODS:
        raise PotentialError(
            f"expected periods (2, 2), got {potential.periods.as_tuple()}", field="periods"
        )
    for lam in lambdas:
        table = band_edges(LatticeKind.HEXAGONAL, HEX_PERIODS, scaled(potential, lam), grid, threads)
        windows = [(-1 - c * lam, -1 + c * lam), (1 - c * lam, 1 + c * lam)]
        hit = any(
            b.emin < hi and b.emax > lo for b in table.bands for lo, hi in windows
        )
        if not hit:
            logger.info("No spectrum within %g * lambda of +-1 at lambda=%g", c, lam)
            return False
    return True


def hex_square_relation(periods: Periods, theta: ThetaLike) -> float:
    """
    max |H_hex^2 - (T + 3I) (+) (T + 3I)| in sublattice-block form, free case.

    Args:
        periods: Periods
        theta: Quasi-momentum

    Returns:
        Residual, zero up to rounding
    """
    h = build_floquet(LatticeKind.HEXAGONAL, periods, None, theta)
    perm = sublattice_permutation(periods)
    block = h[np.ix_(perm, perm)]
    t = build_floquet(LatticeKind.TRIANGULAR, periods, None, theta)
    shifted = t + 3 * np.eye(t.shape[0])
    expected = scipy.linalg.block_diag(shifted, shifted)
    return float(np.max(np.abs(block @ block - expected)))


def hex_gap_bounds(
    lam: float,
    potential: Optional[PeriodicPotential] = None,
    grid: Optional[GridSpec] = None,
    merge_tol: float = 1e-7,
) -> Dict[str, bool]:
    """
    Two-sided gap bounds for hex-2x2 at one coupling.

    The gap at 0 must contain (-lam/5, lam/5) and lie in (-lam/4, lam/4); the
    gaps at +-1 must contain +-1 +- lam^2/20 and lie within +-1 +- lam^2/2.
    """
    table = band_edges(LatticeKind.HEXAGONAL, HEX_PERIODS, scaled(_hex_potential(potential), lam), grid)
    intervals = spectrum(table, merge_tol)
    checks = {"components": intervals.components == 4}
    for name, e0, inner, outer in (
        ("zero", 0.0, lam / 5, lam / 4),
        ("plus1", 1.0, lam ** 2 / 20, lam ** 2 / 2),
        ("minus1", -1.0, lam ** 2 / 20, lam ** 2 / 2),
    ):
        gap = gap_at(intervals, e0)
        checks[name] = gap is not None and (
            gap[0] <= e0 - inner and gap[1] >= e0 + inner
            and gap[0] >= e0 - outer and gap[1] <= e0 + outer
        )
    return checks


def hex_containment_threshold(
    lambdas: Iterable[float],
    potential: Optional[PeriodicPotential] = None,
    grid: Optional[GridSpec] = None,
) -> Optional[float]:
    """Largest tested coupling at which every hex-2x2 gap bound holds, or None."""
    passing = [lam for lam in sorted(lambdas) if all(hex_gap_bounds(lam, potential, grid).values())]
    return passing[-1] if passing else None

