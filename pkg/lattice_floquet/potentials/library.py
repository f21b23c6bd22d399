"""Periodic potentials: the builtin examples, random draws and source strings."""

import math
from dataclasses import dataclass
from typing import Callable, Dict, Sequence, Tuple

import numpy as np

from lattice_floquet.core.errors import PotentialError, unknown_name_error
from lattice_floquet.lattice import LatticeKind, Periods, lattice_kind


@dataclass(frozen=True)
class PeriodicPotential:
    """Real values on the P fundamental sites, in linear-index order."""

    kind: LatticeKind
    periods: Periods
    values: Tuple[float, ...]

    def __post_init__(self):
        values = tuple(float(v) for v in self.values)
        object.__setattr__(self, "values", values)
        expected = self.periods.size(self.kind)
        if len(values) != expected:
            raise PotentialError(
                f"expected {expected} values for {self.kind.value} periods "
                f"{self.periods.as_tuple()}, got {len(values)}",
                field="values",
            )
        if not all(math.isfinite(v) for v in values):
            raise PotentialError("potential values must be finite", field="values")

    def as_array(self) -> np.ndarray:
        return np.array(self.values, dtype=float)

    @property
    def sup_norm(self) -> float:
        return max((abs(v) for v in self.values), default=0.0)


def make_potential(
    kind: LatticeKind,
    periods: Periods,
    values: Sequence[float],
) -> PeriodicPotential:
    """Build a potential, accepting lattice names and period tuples."""
    kind = lattice_kind(kind)
    if not isinstance(periods, Periods):
        periods = Periods(*periods)
    return PeriodicPotential(kind, periods, tuple(values))


def zero_potential(kind: LatticeKind, periods: Periods) -> PeriodicPotential:
    return PeriodicPotential(kind, periods, (0.0,) * periods.size(kind))


def scaled(potential: PeriodicPotential, lam: float) -> PeriodicPotential:
    """The potential lambda * Q."""
    return PeriodicPotential(
        potential.kind, potential.periods, tuple(lam * v for v in potential.values)
    )


def tile(potential: PeriodicPotential, periods: Periods) -> PeriodicPotential:
    """
    View a potential as periodic with respect to larger periods.

    Args:
        potential: Source potential
        periods: Target periods, multiples of the source periods

    Returns:
        The same function of the lattice, listed on the larger fundamental domain
    """
    src = potential.periods
    if periods.p1 % src.p1 or periods.p2 % src.p2:
        raise PotentialError(
            f"periods {periods.as_tuple()} are not multiples of {src.as_tuple()}",
            field="periods",
        )
    p0 = potential.kind.p0
    values = []
    for l2 in range(periods.p2):
        for l1 in range(periods.p1):
            base = p0 * ((l2 % src.p2) * src.p1 + (l1 % src.p1))
            values.extend(potential.values[base:base + p0])
    return PeriodicPotential(potential.kind, periods, tuple(values))


def ehm_radius() -> float:
    """r = sqrt(4 - sqrt(15)) at full double precision."""
    return math.sqrt(4.0 - math.sqrt(15.0))


def _ehm_values() -> Tuple[float, ...]:
    r = ehm_radius()
    return (
        -r - 1 / r + 2,
        -r,
        -r + 1 / r - 2,
        -1 / r,
        0.0,
        1 / r,
        r - 1 / r - 2,
        r,
        r + 1 / r + 2,
    )


_BUILTINS: Dict[str, Callable[[], PeriodicPotential]] = {
    "tri-2x2": lambda: PeriodicPotential(
        LatticeKind.TRIANGULAR, Periods(2, 2), (1.0, 1.0, 1.0, -1.0)
    ),
    "hex-1x1-Z": lambda: PeriodicPotential(
        LatticeKind.HEXAGONAL, Periods(1, 1), (1.0, -1.0)
    ),
    "hex-2x2": lambda: PeriodicPotential(
        LatticeKind.HEXAGONAL, Periods(2, 2), (1.0, -1.0, 1.0, 2.0, -2.0, -1.0, 1.0, -1.0)
    ),
    "ehm-3x3": lambda: PeriodicPotential(LatticeKind.EHM, Periods(3, 3), _ehm_values()),
}

BUILTIN_NAMES = tuple(_BUILTINS)


def builtin(name: str) -> PeriodicPotential:
    """
    Return one of the named example potentials.

    Args:
        name: tri-2x2, hex-1x1-Z, hex-2x2 or ehm-3x3

    Returns:
        The potential with its lattice and periods

    Raises:
        PotentialError: For unknown names; the message lists valid ones
    """
    try:
        factory = _BUILTINS[name]
    except KeyError:
        raise unknown_name_error("builtin", name, BUILTIN_NAMES) from None
    return factory()


def random_potential(
    kind: LatticeKind,
    periods: Periods,
    sup_norm: float,
    seed: int,
) -> PeriodicPotential:
    """
    Draw i.i.d. uniform values in [-sup_norm, sup_norm].

    Args:
        kind: Lattice geometry
        periods: Periods
        sup_norm: Bound on |Q|
        seed: Seed for numpy's default generator

    Returns:
        Reproducible random potential
    """
    if not sup_norm >= 0:
        raise PotentialError(f"sup_norm must be non-negative, got {sup_norm}", field="sup_norm")
    rng = np.random.default_rng(seed)
    values = rng.uniform(-sup_norm, sup_norm, size=periods.size(kind))
    return PeriodicPotential(kind, periods, tuple(values))


def from_source(kind: LatticeKind, periods: Periods, source: str, seed: int = 0) -> PeriodicPotential:
    """
    Resolve a potential source string.

    Accepted forms are "zero", "builtin:<name>", "file:<path>" and
    "random:<sup_norm>[:<seed>]". A random source without its own seed uses
    the seed argument.

    Args:
        kind: Lattice the caller expects
        periods: Periods the caller expects
        source: Source string
        seed: Seed for a random source that omits one

    Returns:
        The potential, checked against kind and periods

    Raises:
        PotentialError: If the source is malformed or does not match
    """
    from lattice_floquet.potentials.io import load

    scheme, _, rest = source.partition(":")
    if scheme == "zero" and not rest:
        return zero_potential(kind, periods)
    if scheme == "builtin":
        potential = builtin(rest)
    elif scheme == "file":
        potential = load(rest)
    elif scheme == "random":
        parts = rest.split(":")
        if len(parts) not in (1, 2):
            raise PotentialError(f"expected random:<sup>[:<seed>], got '{source}'", field="potential")
        try:
            sup = float(parts[0])
            if len(parts) == 2:
                seed = int(parts[1])
        except ValueError:
            raise PotentialError(f"bad random potential source '{source}'", field="potential") from None
        return random_potential(kind, periods, sup, seed)
    else:
        raise PotentialError(
            f"unknown potential source '{source}' (use zero, builtin:, file: or random:)",
            field="potential",
        )

    if potential.kind != kind:
        raise PotentialError(
            f"potential '{source}' lives on the {potential.kind.value} lattice, not {kind.value}",
            field="lattice",
        )
    if potential.periods != periods:
        raise PotentialError(
            f"potential '{source}' has periods {potential.periods.as_tuple()}, "
            f"expected {periods.as_tuple()}",
            field="periods",
        )
    return potential
