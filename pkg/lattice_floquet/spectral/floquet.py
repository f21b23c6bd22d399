"""Floquet matrices H_Q(theta) and closed-form free dispersion relations."""

from functools import lru_cache
from typing import NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np

from lattice_floquet.core.errors import PotentialError
from lattice_floquet.lattice import LatticeKind, Periods, edge_table
from lattice_floquet.potentials import PeriodicPotential
from lattice_floquet.spectral.eigen import eigvalsh, eigvalsh_batch


class FloquetPoint(NamedTuple):
    """A quasi-momentum; accepted anywhere on the covering plane."""

    theta1: float
    theta2: float


class FloquetIndex(NamedTuple):
    """An element l of Lambda = [0, p1) x [0, p2)."""

    l1: int
    l2: int


ThetaLike = Union[FloquetPoint, Tuple[float, float], Sequence[float]]


@lru_cache(maxsize=256)
def _assembly(kind: LatticeKind, periods: Periods) -> Tuple[np.ndarray, np.ndarray]:
    """Wrap counts (E, 2) and the edge-to-entry incidence matrix (E, P*P)."""
    edges = np.array(edge_table(kind, periods), dtype=int)
    size = periods.size(kind)
    incidence = np.zeros((len(edges), size * size), dtype=complex)
    incidence[np.arange(len(edges)), edges[:, 0] * size + edges[:, 1]] = 1.0
    taus = edges[:, 2:4].astype(float)
    taus.setflags(write=False)
    incidence.setflags(write=False)
    return taus, incidence


def _potential_values(
    kind: LatticeKind,
    periods: Periods,
    potential: Optional[PeriodicPotential],
) -> np.ndarray:
    size = periods.size(kind)
    if potential is None:
        return np.zeros(size)
    if potential.kind != kind:
        raise PotentialError(
            f"Potential is defined on the {potential.kind.value} lattice, not {kind.value}",
            field="lattice",
        )
    if potential.periods != periods:
        raise PotentialError(
            f"Potential has periods {potential.periods.as_tuple()}, expected {periods.as_tuple()}",
            field="periods",
        )
    return potential.as_array()


def build_floquet_batch(
    kind: LatticeKind,
    periods: Periods,
    potential: Optional[PeriodicPotential],
    thetas: np.ndarray,
) -> np.ndarray:
    """
    Build H_Q(theta) for many quasi-momenta at once.

    Entry (u, v) sums exp(i <tau, theta>) over the neighbours of u that reduce
    to v with wrap count tau; the diagonal carries Q(u).

    Args:
        kind: Lattice geometry
        periods: Periods of the potential
        potential: Potential on the fundamental domain, or None for Q = 0
        thetas: Array of shape (N, 2)

    Returns:
        Complex array of shape (N, P, P), exactly Hermitian

    Raises:
        PotentialError: If the potential belongs to another lattice or period
    """
    q = _potential_values(kind, periods, potential)
    thetas = np.atleast_2d(np.asarray(thetas, dtype=float))
    taus, incidence = _assembly(kind, periods)
    size = periods.size(kind)

    phases = np.exp(1j * (thetas @ taus.T))
    h = (phases @ incidence).reshape(len(thetas), size, size)
    h = 0.5 * (h + np.conj(np.swapaxes(h, -1, -2)))
    idx = np.arange(size)
    h[:, idx, idx] = h[:, idx, idx].real + q
    return h


def build_floquet(
    kind: LatticeKind,
    periods: Periods,
    potential: Optional[PeriodicPotential],
    theta: ThetaLike,
) -> np.ndarray:
    """
    Build the P x P Floquet matrix at one quasi-momentum.

    Args:
        kind: Lattice geometry
        periods: Periods of the potential
        potential: Potential on the fundamental domain, or None for Q = 0
        theta: (theta1, theta2) in radians

    Returns:
        Hermitian complex matrix of shape (P, P)
    """
    return build_floquet_batch(kind, periods, potential, np.array([theta], dtype=float))[0]


def sorted_eigs(
    kind: LatticeKind,
    periods: Periods,
    potential: Optional[PeriodicPotential],
    theta: ThetaLike,
) -> np.ndarray:
    """Ascending eigenvalues E_1(theta) <= ... <= E_P(theta)."""
    t = (float(theta[0]), float(theta[1]))
    return eigvalsh(build_floquet(kind, periods, potential, t), theta=t)


def sorted_eigs_batch(
    kind: LatticeKind,
    periods: Periods,
    potential: Optional[PeriodicPotential],
    thetas: np.ndarray,
) -> np.ndarray:
    """Ascending eigenvalues for a stack of quasi-momenta, shape (N, P)."""
    thetas = np.atleast_2d(np.asarray(thetas, dtype=float))
    return eigvalsh_batch(build_floquet_batch(kind, periods, potential, thetas), thetas=thetas)


def _xy(periods: Periods, theta: ThetaLike, l: Sequence[int]) -> Tuple[float, float]:
    x = (theta[0] + 2 * np.pi * l[0]) / periods.p1
    y = (theta[1] + 2 * np.pi * l[1]) / periods.p2
    return x, y


def dispersion_square(periods: Periods, theta: ThetaLike, l: Sequence[int]) -> float:
    """2cos x + 2cos y."""
    x, y = _xy(periods, theta, l)
    return float(2 * np.cos(x) + 2 * np.cos(y))


def dispersion_tri(periods: Periods, theta: ThetaLike, l: Sequence[int]) -> float:
    """2cos x + 2cos y + 2cos(x - y) with x = (theta1 + 2 pi l1) / p1, y likewise."""
    x, y = _xy(periods, theta, l)
    return float(2 * np.cos(x) + 2 * np.cos(y) + 2 * np.cos(x - y))


def dispersion_sqn(periods: Periods, theta: ThetaLike, l: Sequence[int]) -> float:
    """Triangular dispersion plus 2cos(x + y)."""
    x, y = _xy(periods, theta, l)
    return float(2 * np.cos(x) + 2 * np.cos(y) + 2 * np.cos(x - y) + 2 * np.cos(x + y))


_DISPERSIONS = {
    LatticeKind.SQUARE: dispersion_square,
    LatticeKind.TRIANGULAR: dispersion_tri,
    LatticeKind.EHM: dispersion_sqn,
}


def free_band_values(kind: LatticeKind, periods: Periods, theta: ThetaLike) -> np.ndarray:
    """
    Sorted free eigenvalues from the closed-form dispersion.

    Args:
        kind: square, triangular or ehm
        periods: Periods
        theta: Quasi-momentum

    Returns:
        Ascending array of the p1 * p2 dispersion values over Lambda
    """
    if kind is LatticeKind.HEXAGONAL:
        return hex_bands_from_tri(periods, theta)
    dispersion = _DISPERSIONS[kind]
    values = [
        dispersion(periods, theta, (l1, l2))
        for l2 in range(periods.p2)
        for l1 in range(periods.p1)
    ]
    return np.sort(np.array(values))


def hex_bands_from_tri(periods: Periods, theta: ThetaLike) -> np.ndarray:
    """
    Free hexagonal eigenvalues as +-sqrt(t + 3) over triangular eigenvalues t.

    Args:
        periods: Periods
        theta: Quasi-momentum

    Returns:
        Ascending array of 2 * p1 * p2 values
    """
    t = free_band_values(LatticeKind.TRIANGULAR, periods, theta)
    root = np.sqrt(np.clip(t + 3.0, 0.0, None))
    return np.sort(np.concatenate([-root, root]))


def sublattice_permutation(periods: Periods) -> np.ndarray:
    """Index order putting every sublattice-0 site before every sublattice-1 site."""
    size = periods.size(LatticeKind.HEXAGONAL)
    return np.concatenate([np.arange(0, size, 2), np.arange(1, size, 2)])


def hex_triangular_blocks(periods: Periods, theta: ThetaLike) -> np.ndarray:
    """
    Off-diagonal block F of the free hexagonal matrix in sublattice-block form.

    After sublattice_permutation the matrix reads [[0, F], [F^H, 0]], and
    F F^H = F^H F = T + 3 I for the triangular matrix T at the same periods.
    """
    h = build_floquet(LatticeKind.HEXAGONAL, periods, None, theta)
    perm = sublattice_permutation(periods)
    half = len(perm) // 2
    return h[np.ix_(perm, perm)][:half, half:]


def sublattice_sign(periods: Periods) -> np.ndarray:
    """Diagonal of Z (x) I: +1 on sublattice 0, -1 on sublattice 1."""
    size = periods.size(LatticeKind.HEXAGONAL)
    return np.where(np.arange(size) % 2 == 0, 1.0, -1.0)


def anticommutator_residual(periods: Periods, theta: ThetaLike) -> float:
    """Max entry of H Z + Z H for the free hexagonal matrix and Z = sublattice sign."""
    h = build_floquet(LatticeKind.HEXAGONAL, periods, None, theta)
    z = np.diag(sublattice_sign(periods))
    return float(np.max(np.abs(h @ z + z @ h)))
