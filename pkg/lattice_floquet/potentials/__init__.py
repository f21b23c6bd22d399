"""Periodic potentials."""

from lattice_floquet.potentials.library import (
    BUILTIN_NAMES,
    PeriodicPotential,
    builtin,
    ehm_radius,
    from_source,
    make_potential,
    random_potential,
    scaled,
    tile,
    zero_potential,
)
from lattice_floquet.potentials.io import load, save

__all__ = [
    "BUILTIN_NAMES",
    "PeriodicPotential",
    "builtin",
    "ehm_radius",
    "from_source",
    "load",
    "make_potential",
    "random_potential",
    "save",
    "scaled",
    "tile",
    "zero_potential",
]
