"""Band edges over the Brillouin torus, spectrum intervals and gap queries."""

import math
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import minimize

from lattice_floquet.core.config import get_default_config
from lattice_floquet.core.errors import OutsideHullError, ParameterRangeError, PeriodsError
from lattice_floquet.core.executor import map_ordered
from lattice_floquet.lattice import LatticeKind, Periods
from lattice_floquet.potentials import PeriodicPotential, scaled
from lattice_floquet.spectral.floquet import FloquetPoint, sorted_eigs, sorted_eigs_batch

logger = logging.getLogger(__name__)

_CHUNK = 2048


@dataclass(frozen=True)
class GridSpec:
    """Sampling grid on the torus and refinement controls."""

    n1: int = 64
    n2: int = 64
    refine_tol: float = 1e-9
    max_refine_rounds: int = 40
    candidates: int = 2

    def __post_init__(self):
        if self.n1 < 4 or self.n2 < 4:
            raise PeriodsError(f"grid must be at least 4x4, got {self.n1}x{self.n2}", field="grid")
        if not self.refine_tol > 0:
            raise ParameterRangeError("refine_tol", self.refine_tol, "a positive number")
        if self.max_refine_rounds < 0:
            raise ParameterRangeError("max_refine_rounds", self.max_refine_rounds, ">= 0")
        if self.candidates < 1:
            raise ParameterRangeError("candidates", self.candidates, ">= 1")

    def thetas(self) -> np.ndarray:
        """Grid points 2 pi k / n, shape (n1 * n2, 2), theta2 varying fastest."""
        t1 = 2 * np.pi * np.arange(self.n1) / self.n1
        t2 = 2 * np.pi * np.arange(self.n2) / self.n2
        g1, g2 = np.meshgrid(t1, t2, indexing="ij")
        return np.column_stack([g1.ravel(), g2.ravel()])


def default_grid(periods: Periods, config: Optional[Dict[str, Any]] = None) -> GridSpec:
    """
    Grid for the given periods.

    The base resolution applies up to periods (3, 3); beyond that each
    direction uses ceil(base / p) * p samples.
    """
    grid_cfg = (config or get_default_config())["grid"]
    n1, n2 = grid_cfg["n1"], grid_cfg["n2"]
    if periods.p1 > 3 or periods.p2 > 3:
        n1 = math.ceil(n1 / periods.p1) * periods.p1
        n2 = math.ceil(n2 / periods.p2) * periods.p2
    return GridSpec(
        n1=n1,
        n2=n2,
        refine_tol=grid_cfg["refine_tol"],
        max_refine_rounds=grid_cfg["max_refine_rounds"],
        candidates=grid_cfg.get("candidates", 2),
    )


@dataclass(frozen=True)
class BandRecord:
    """Range [emin, emax] of one sorted band function."""

    index: int
    emin: float
    emax: float
    argmin: FloquetPoint
    argmax: FloquetPoint


@dataclass
class BandTable:
    """Refined band edges plus the raw grid samples they came from."""

    bands: Tuple[BandRecord, ...]
    grid: GridSpec
    thetas: np.ndarray = field(repr=False)
    samples: np.ndarray = field(repr=False)

    def __len__(self) -> int:
        return len(self.bands)


@dataclass(frozen=True)
class SpectrumIntervals:
    """Sorted disjoint closed intervals whose union is the computed spectrum."""

    intervals: Tuple[Tuple[float, float], ...]
    merge_tol: float

    @property
    def components(self) -> int:
        return len(self.intervals)

    @property
    def hull(self) -> Tuple[float, float]:
        return (self.intervals[0][0], self.intervals[-1][1])

    def gaps(self) -> List[Tuple[float, float]]:
        return [
            (self.intervals[i][1], self.intervals[i + 1][0])
            for i in range(len(self.intervals) - 1)
        ]

    def contains(self, energy: float) -> bool:
        return any(a <= energy <= b for a, b in self.intervals)


@dataclass(frozen=True)
class Gap:
    left: float
    right: float
    nearest_exceptional: Optional[float] = None

    @property
    def width(self) -> float:
        return self.right - self.left


@dataclass(frozen=True)
class GapReport:
    """Spectrum summary of Delta + lambda Q."""

    lam: float
    components: int
    gaps: Tuple[Gap, ...]
    intervals: SpectrumIntervals


def sample_grid(
    kind: LatticeKind,
    periods: Periods,
    potential: Optional[PeriodicPotential],
    grid: GridSpec,
    threads: Optional[int] = None,
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Evaluate all sorted eigenvalues on the grid.

    Returns:
        (thetas of shape (N, 2), eigenvalues of shape (N, P))
    """
    thetas = grid.thetas()
    chunks = [thetas[i:i + _CHUNK] for i in range(0, len(thetas), _CHUNK)]
    parts = map_ordered(
        lambda chunk: sorted_eigs_batch(kind, periods, potential, chunk), chunks, threads
    )
    return thetas, np.concatenate(parts, axis=0)


def _local_extrema(values: np.ndarray, largest: bool, count: int) -> List[int]:
    """Flat indices of the best periodic-grid local extrema of a (n1, n2) array."""
    v = values if largest else -values
    mask = np.ones_like(v, dtype=bool)
    for d1 in (-1, 0, 1):
        for d2 in (-1, 0, 1):
            if d1 or d2:
                mask &= v >= np.roll(np.roll(v, d1, axis=0), d2, axis=1)
    flat = np.flatnonzero(mask)
    if flat.size == 0:
        flat = np.array([int(np.argmax(v))])
    order = flat[np.argsort(-v.ravel()[flat], kind="stable")]
    return [int(i) for i in order[:count]]


def _refine(objective, start: np.ndarray, value: float, step: float, grid: GridSpec):
    """Nelder-Mead restarts with a halving simplex until the gain drops below refine_tol."""
    best_x, best_f = np.array(start, dtype=float), float(value)
    for _ in range(grid.max_refine_rounds):
        simplex = np.array([best_x, best_x + [step, 0.0], best_x + [0.0, step]])
        result = minimize(
            objective,
            best_x,
            method="Nelder-Mead",
            options={
                "initial_simplex": simplex,
                "xatol": grid.refine_tol,
                "fatol": grid.refine_tol * 1e-2,
                "maxiter": 2000,
            },
        )
        gain = best_f - float(result.fun)
        if gain > 0:
            best_x, best_f = np.array(result.x, dtype=float), float(result.fun)
        step *= 0.5
        if gain < grid.refine_tol or step < grid.refine_tol:
            break
    return best_x, best_f


def _band_record(
    kind: LatticeKind,
    periods: Periods,
    potential: Optional[PeriodicPotential],
    grid: GridSpec,
    thetas: np.ndarray,
    column: np.ndarray,
    k: int,
) -> BandRecord:
    values = column.reshape(grid.n1, grid.n2)
    step = 2 * np.pi / max(grid.n1, grid.n2)

    def energy(theta):
        return float(sorted_eigs(kind, periods, potential, theta)[k])

    edges = {}
    for largest in (False, True):
        sign = -1.0 if largest else 1.0
        best_i = int(np.argmax(column) if largest else np.argmin(column))
        best_x, best_f = thetas[best_i], sign * float(column[best_i])
        if grid.max_refine_rounds > 0:
            for i in _local_extrema(values, largest, grid.candidates):
                x, f = _refine(lambda t: sign * energy(t), thetas[i], sign * column[i], step, grid)
                if f < best_f:
                    best_x, best_f = x, f
        edges[largest] = (FloquetPoint(float(best_x[0]), float(best_x[1])), sign * best_f)

    argmin, emin = edges[False]
    argmax, emax = edges[True]
    return BandRecord(index=k, emin=emin, emax=emax, argmin=argmin, argmax=argmax)


def band_edges(
    kind: LatticeKind,
    periods: Periods,
    potential: Optional[PeriodicPotential],
    grid: Optional[GridSpec] = None,
    threads: Optional[int] = None,
) -> BandTable:
    """
    Compute [E_k^-, E_k^+] for every band.

    Grid minima and maxima of each sorted eigenvalue are polished by
    Nelder-Mead over theta, started from the best local extrema of the grid.
    Refined edges never move inward of the grid values.

    Args:
        kind: Lattice geometry
        periods: Periods
        potential: Potential, or None for the free Laplacian
        grid: Sampling grid (default_grid when omitted)
        threads: Worker cap for the sweep and per-band refinement

    Returns:
        BandTable with P records

    Raises:
        EigenSolverError: With the failing theta attached
    """
    grid = grid or default_grid(periods)
    thetas, samples = sample_grid(kind, periods, potential, grid, threads)
    size = samples.shape[1]
    logger.info(
        "Sampled %d bands of %s %s on a %dx%d grid",
        size, kind.value, periods.as_tuple(), grid.n1, grid.n2,
    )
    records = map_ordered(
        lambda k: _band_record(kind, periods, potential, grid, thetas, samples[:, k], k),
        range(size),
        threads,
    )
    return BandTable(bands=tuple(records), grid=grid, thetas=thetas, samples=samples)


def spectrum(bands: BandTable, merge_tol: float = 1e-7) -> SpectrumIntervals:
    """
    Merge bands into disjoint intervals.

    Intervals closer than 2 * merge_tol are joined, so every reported gap is
    wider than 2 * merge_tol.

    Args:
        bands: Band table
        merge_tol: Merge tolerance, positive

    Returns:
        SpectrumIntervals
    """
    if not merge_tol > 0:
        raise ParameterRangeError("merge_tol", merge_tol, "a positive number")
    ranges = sorted((b.emin, b.emax) for b in bands.bands)
    merged = [list(ranges[0])]
    for a, b in ranges[1:]:
        if a <= merged[-1][1] + 2 * merge_tol:
            merged[-1][1] = max(merged[-1][1], b)
        else:
            merged.append([a, b])
    return SpectrumIntervals(tuple((a, b) for a, b in merged), merge_tol)


def gap_at(intervals: SpectrumIntervals, energy: float) -> Optional[Tuple[float, float]]:
    """
    The maximal open gap containing an energy.

    Args:
        intervals: Spectrum
        energy: Query energy

    Returns:
        (left, right) when energy lies strictly between two intervals, None when covered

    Raises:
        OutsideHullError: If energy is below the bottom or above the top of the spectrum
    """
    lo, hi = intervals.hull
    if energy < lo or energy > hi:
        raise OutsideHullError(energy, (lo, hi))
    for left, right in intervals.gaps():
        if left < energy < right:
            return (left, right)
    return None


def track_gap(intervals: SpectrumIntervals, energy: float) -> Optional[Tuple[float, float]]:
    """gap_at that treats energies outside the hull as covered."""
    try:
        return gap_at(intervals, energy)
    except OutsideHullError:
        return None


def _nearest_exceptional(kind: LatticeKind, left: float, right: float) -> Optional[float]:
    inside = [e for e in kind.exceptional_energies if left < e < right]
    if not inside:
        return None
    middle = 0.5 * (left + right)
    return min(inside, key=lambda e: abs(e - middle))


def gap_report(kind: LatticeKind, lam: float, intervals: SpectrumIntervals) -> GapReport:
    gaps = tuple(
        Gap(left, right, _nearest_exceptional(kind, left, right))
        for left, right in intervals.gaps()
    )
    return GapReport(lam=lam, components=intervals.components, gaps=gaps, intervals=intervals)


def gap_scan(
    kind: LatticeKind,
    periods: Periods,
    potential: Optional[PeriodicPotential],
    lambdas: Sequence[float],
    grid: Optional[GridSpec] = None,
    merge_tol: float = 1e-7,
    threads: Optional[int] = None,
) -> List[GapReport]:
    """
    Spectrum of Delta + lambda Q for each coupling.

    Args:
        kind: Lattice geometry
        periods: Periods
        potential: Q, or None for the free Laplacian
        lambdas: Couplings, non-negative
        grid: Sampling grid
        merge_tol: Merge tolerance for spectrum
        threads: Worker cap

    Returns:
        One GapReport per coupling, in input order
    """
    reports = []
    for lam in lambdas:
        if lam < 0:
            raise ParameterRangeError("lambda", lam, "a non-negative coupling")
        q = None if potential is None else scaled(potential, lam)
        table = band_edges(kind, periods, q, grid, threads)
        report = gap_report(kind, lam, spectrum(table, merge_tol))
        logger.info("lambda=%g: %d component(s)", lam, report.components)
        reports.append(report)
    return reports


def check_interior(
    kind: LatticeKind,
    periods: Periods,
    energy: float,
    margin: float,
    grid: Optional[GridSpec] = None,
) -> bool:
    """
    Whether an energy sits inside some free band with room to spare.

    Args:
        kind: Lattice geometry
        periods: Periods the free Laplacian is viewed with
        energy: Energy E
        margin: Required distance to both edges, positive
        grid: Sampling grid

    Returns:
        True iff emin + margin <= E <= emax - margin for some band
    """
    if not margin > 0:
        raise ParameterRangeError("margin", margin, "a positive number")
    table = band_edges(kind, periods, None, grid)
    return any(b.emin + margin <= energy <= b.emax - margin for b in table.bands)


def scaling_exponent(lambdas: Sequence[float], widths: Sequence[float]) -> float:
    """Least-squares slope of log(width) against log(lambda)."""
    x = np.log(np.asarray(lambdas, dtype=float))
    y = np.log(np.asarray(widths, dtype=float))
    slope, _ = np.polyfit(x, y, 1)
    return float(slope)
