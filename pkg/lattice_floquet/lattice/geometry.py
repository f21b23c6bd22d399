"""Lattice geometries as edge stencils on a fundamental domain.

Sites of a (p1, p2)-periodic problem are labelled (l1, l2, sublattice) with
linear index p0 * (l2 * p1 + l1) + sublattice. Offsets are in lattice
coordinates (n, m); for the hexagonal lattice these run along b+ and b-, with
sublattice 0 at n b+ + m b- and sublattice 1 at a1 + n b+ + m b-.
"""

import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Dict, List, Tuple

from lattice_floquet.core.errors import PeriodsError, unknown_name_error


@dataclass(frozen=True)
class StencilEdge:
    """One directed edge of the periodic graph, relative to its source cell."""

    from_sublattice: int
    to_sublattice: int
    offset: Tuple[int, int]
    weight: float = 1.0


_SQUARE_OFFSETS = ((1, 0), (-1, 0), (0, 1), (0, -1))

_STENCILS: Dict[str, Tuple[StencilEdge, ...]] = {
    "square": tuple(StencilEdge(0, 0, o) for o in _SQUARE_OFFSETS),
    "triangular": tuple(
        StencilEdge(0, 0, o) for o in _SQUARE_OFFSETS + ((-1, 1), (1, -1))
    ),
    "ehm": tuple(
        StencilEdge(0, 0, o)
        for o in _SQUARE_OFFSETS + ((1, 1), (-1, -1), (1, -1), (-1, 1))
    ),
    "hexagonal": (
        StencilEdge(0, 1, (0, 0)),
        StencilEdge(0, 1, (0, -1)),
        StencilEdge(0, 1, (-1, 0)),
        StencilEdge(1, 0, (0, 0)),
        StencilEdge(1, 0, (0, 1)),
        StencilEdge(1, 0, (1, 0)),
    ),
}

_SQRT3_2 = math.sqrt(3.0) / 2.0

_GENERATORS = {
    "square": ((1.0, 0.0), (0.0, 1.0)),
    "triangular": ((1.0, 0.0), (0.5, _SQRT3_2)),
    "ehm": ((1.0, 0.0), (0.0, 1.0)),
    "hexagonal": ((1.5, _SQRT3_2), (1.5, -_SQRT3_2)),
}


class LatticeKind(str, Enum):
    """The four supported lattice geometries."""

    SQUARE = "square"
    TRIANGULAR = "triangular"
    HEXAGONAL = "hexagonal"
    EHM = "ehm"

    @property
    def p0(self) -> int:
        """Sites per unit cell."""
        return 2 if self is LatticeKind.HEXAGONAL else 1

    @property
    def stencil(self) -> Tuple[StencilEdge, ...]:
        return _STENCILS[self.value]

    @property
    def degree(self) -> int:
        """Neighbours per site."""
        return sum(1 for e in self.stencil if e.from_sublattice == 0)

    @property
    def generators(self) -> Tuple[Tuple[float, float], Tuple[float, float]]:
        """Cartesian generators, for documentation and plot output only."""
        return _GENERATORS[self.value]

    @property
    def free_hull(self) -> Tuple[float, float]:
        """Spectrum of the free Laplacian."""
        return {
            "square": (-4.0, 4.0),
            "triangular": (-3.0, 6.0),
            "hexagonal": (-3.0, 3.0),
            "ehm": (-4.0, 8.0),
        }[self.value]

    @property
    def exceptional_energies(self) -> Tuple[float, ...]:
        """Energies at which small periodic potentials may open gaps."""
        return {
            "square": (),
            "triangular": (-2.0,),
            "hexagonal": (-1.0, 0.0, 1.0),
            "ehm": (-1.0,),
        }[self.value]


def lattice_kind(name: str) -> LatticeKind:
    """
    Parse a lattice name.

    Args:
        name: One of square, triangular, hexagonal, ehm

    Returns:
        The matching LatticeKind

    Raises:
        PotentialError: If the name is unknown
    """
    if isinstance(name, LatticeKind):
        return name
    try:
        return LatticeKind(name.strip().lower())
    except ValueError:
        raise unknown_name_error("lattice", name, [k.value for k in LatticeKind]) from None


@dataclass(frozen=True)
class Periods:
    """Periods (p1, p2) of a potential along the two generators."""

    p1: int
    p2: int

    def __post_init__(self):
        for field in ("p1", "p2"):
            value = getattr(self, field)
            if not isinstance(value, int) or isinstance(value, bool) or value < 1:
                raise PeriodsError(f"{field} must be a positive integer, got {value!r}", field=field)

    def size(self, kind: LatticeKind) -> int:
        """Number of fundamental sites P = p0 * p1 * p2."""
        return kind.p0 * self.p1 * self.p2

    def as_tuple(self) -> Tuple[int, int]:
        return (self.p1, self.p2)


@dataclass(frozen=True)
class FundamentalSite:
    """A vertex of the fundamental domain."""

    l1: int
    l2: int
    sublattice: int = 0


def _check_site(kind: LatticeKind, periods: Periods, site: FundamentalSite) -> None:
    if not 0 <= site.l1 < periods.p1:
        raise PeriodsError(f"l1={site.l1} outside [0, {periods.p1})", field="l1")
    if not 0 <= site.l2 < periods.p2:
        raise PeriodsError(f"l2={site.l2} outside [0, {periods.p2})", field="l2")
    if not 0 <= site.sublattice < kind.p0:
        raise PeriodsError(
            f"sublattice={site.sublattice} outside [0, {kind.p0})", field="sublattice"
        )


def site_index(kind: LatticeKind, periods: Periods, site: FundamentalSite) -> int:
    """Linear index p0 * (l2 * p1 + l1) + sublattice."""
    _check_site(kind, periods, site)
    return kind.p0 * (site.l2 * periods.p1 + site.l1) + site.sublattice


def site_at(kind: LatticeKind, periods: Periods, index: int) -> FundamentalSite:
    """Inverse of site_index."""
    size = periods.size(kind)
    if not 0 <= index < size:
        raise PeriodsError(f"index {index} outside [0, {size})", field="index")
    cell, sublattice = divmod(index, kind.p0)
    l2, l1 = divmod(cell, periods.p1)
    return FundamentalSite(l1, l2, sublattice)


def fundamental_sites(kind: LatticeKind, periods: Periods) -> List[FundamentalSite]:
    """
    List the P sites of the fundamental domain in linear-index order.

    Args:
        kind: Lattice geometry
        periods: Periods of the potential

    Returns:
        Sites ordered by linear index
    """
    return [site_at(kind, periods, i) for i in range(periods.size(kind))]


def neighbor_list(
    kind: LatticeKind,
    periods: Periods,
    site: FundamentalSite,
) -> List[Tuple[FundamentalSite, Tuple[int, int]]]:
    """
    Enumerate the neighbours of a fundamental site on the infinite lattice.

    Each neighbour w is reduced to its fundamental representative v together
    with the wrap count tau, so that w = v + tau1 * p1 * a1 + tau2 * p2 * a2.

    Args:
        kind: Lattice geometry
        periods: Periods of the potential
        site: Source site u

    Returns:
        (v, tau) pairs, one per stencil edge leaving u's sublattice
    """
    _check_site(kind, periods, site)
    result = []
    for edge in kind.stencil:
        if edge.from_sublattice != site.sublattice:
            continue
        tau1, l1 = divmod(site.l1 + edge.offset[0], periods.p1)
        tau2, l2 = divmod(site.l2 + edge.offset[1], periods.p2)
        result.append((FundamentalSite(l1, l2, edge.to_sublattice), (tau1, tau2)))
    return result


@lru_cache(maxsize=256)
def edge_table(kind: LatticeKind, periods: Periods) -> Tuple[Tuple[int, int, int, int], ...]:
    """
    Flatten every neighbour relation into (row, col, tau1, tau2) tuples.

    Cached per (kind, periods); used by the Floquet matrix builders.
    """
    rows = []
    for u in fundamental_sites(kind, periods):
        i = site_index(kind, periods, u)
        for v, tau in neighbor_list(kind, periods, u):
            rows.append((i, site_index(kind, periods, v), tau[0], tau[1]))
    return tuple(rows)
