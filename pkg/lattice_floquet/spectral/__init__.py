"""Eigenvalues, Floquet matrices and band structure."""
