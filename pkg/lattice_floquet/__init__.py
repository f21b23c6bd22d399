"""lattice-floquet - spectra of periodic Schrodinger operators on planar lattices."""

__version__ = "0.1.0"
