"""Lattice geometries and fundamental domains."""

from lattice_floquet.lattice.geometry import (
    FundamentalSite,
    LatticeKind,
    Periods,
    StencilEdge,
    edge_table,
    fundamental_sites,
    lattice_kind,
    neighbor_list,
    site_at,
    site_index,
)

__all__ = [
    "FundamentalSite",
    "LatticeKind",
    "Periods",
    "StencilEdge",
    "edge_table",
    "fundamental_sites",
    "lattice_kind",
    "neighbor_list",
    "site_at",
    "site_index",
]
