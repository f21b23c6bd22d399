"""Tests for lattice-floquet."""
