"""Tests for Floquet matrices and the free dispersion relations."""

import math

import numpy as np
import pytest

from lattice_floquet.core.errors import PotentialError
from lattice_floquet.lattice import LatticeKind, Periods
from lattice_floquet.potentials import builtin, make_potential, random_potential, scaled
from lattice_floquet.spectral.floquet import (
    anticommutator_residual,
    build_floquet,
    build_floquet_batch,
    dispersion_sqn,
    dispersion_square,
    dispersion_tri,
    free_band_values,
    hex_bands_from_tri,
    hex_triangular_blocks,
    sorted_eigs,
    sorted_eigs_batch,
)

THETAS = [(0.0, 0.0), (math.pi, math.pi), (0.3, 2.9), (5.1, 1.7)]


class TestAssembly:
    """Structure of H_Q(theta)."""

    @pytest.mark.parametrize("kind", list(LatticeKind))
    def test_hermitian(self, kind):
        periods = Periods(2, 3)
        q = random_potential(kind, periods, 1.0, 5)
        h = build_floquet(kind, periods, q, (0.4, 1.9))
        assert h.shape == (periods.size(kind),) * 2
        np.testing.assert_allclose(h, h.conj().T, atol=1e-15)
        np.testing.assert_allclose(h.diagonal().real, q.as_array() + build_floquet(kind, periods, None, (0.4, 1.9)).diagonal().real)

    def test_square_one_site(self):
        """Single-site square lattice: 2cos t1 + 2cos t2."""
        h = build_floquet(LatticeKind.SQUARE, Periods(1, 1), None, (0.7, 1.1))
        assert h[0, 0].real == pytest.approx(2 * math.cos(0.7) + 2 * math.cos(1.1))

    def test_hexagonal_two_by_two_entries(self):
        """Sublattice ordering pins (1,2) = 1, (1,4) = exp(-i t1) and a diagonal of lambda Q."""
        lam, theta = 0.3, (0.7, 1.9)
        values = [1, -1, 1, 2, -2, -1, 1, -1]
        q = make_potential(LatticeKind.HEXAGONAL, Periods(2, 2), [lam * v for v in values])
        h = build_floquet(LatticeKind.HEXAGONAL, Periods(2, 2), q, theta)
        assert h[0, 1] == pytest.approx(1.0)
        assert h[0, 3] == pytest.approx(np.exp(-1j * theta[0]))
        np.testing.assert_allclose(h.diagonal(), [lam * v for v in values], atol=1e-15)

    @pytest.mark.parametrize("kind", list(LatticeKind))
    def test_periodic_in_theta(self, kind):
        """H(theta + 2 pi e_j) equals H(theta) up to rounding."""
        periods = Periods(2, 2)
        a = build_floquet(kind, periods, None, (0.3, 0.8))
        b = build_floquet(kind, periods, None, (0.3 + 2 * math.pi, 0.8 - 2 * math.pi))
        np.testing.assert_allclose(a, b, atol=1e-12)

    def test_batch_matches_single(self):
        thetas = np.array(THETAS)
        stack = build_floquet_batch(LatticeKind.EHM, Periods(3, 2), None, thetas)
        for k, theta in enumerate(THETAS):
            np.testing.assert_allclose(stack[k], build_floquet(LatticeKind.EHM, Periods(3, 2), None, theta))

    def test_sorted_eigs_batch(self):
        thetas = np.array(THETAS)
        batch = sorted_eigs_batch(LatticeKind.TRIANGULAR, Periods(2, 2), None, thetas)
        for k, theta in enumerate(THETAS):
            np.testing.assert_allclose(batch[k], sorted_eigs(LatticeKind.TRIANGULAR, Periods(2, 2), None, theta), atol=1e-12)

    def test_wrong_lattice_rejected(self):
        with pytest.raises(PotentialError) as exc:
            build_floquet(LatticeKind.SQUARE, Periods(2, 2), builtin("tri-2x2"), (0.0, 0.0))
        assert exc.value.field == "lattice"

    def test_wrong_periods_rejected(self):
        with pytest.raises(PotentialError) as exc:
            build_floquet(LatticeKind.TRIANGULAR, Periods(2, 3), builtin("tri-2x2"), (0.0, 0.0))
        assert exc.value.field == "periods"


class TestFreeSpectra:
    """Closed-form dispersion oracles."""

    def test_triangular_two_by_two_at_zero(self):
        values = sorted_eigs(LatticeKind.TRIANGULAR, Periods(2, 2), None, (0.0, 0.0))
        np.testing.assert_allclose(values, [-2.0, -2.0, -2.0, 6.0], atol=1e-12)

    @pytest.mark.parametrize("kind", [LatticeKind.SQUARE, LatticeKind.TRIANGULAR, LatticeKind.EHM])
    @pytest.mark.parametrize("periods", [Periods(1, 1), Periods(2, 3), Periods(5, 7)])
    def test_dispersion_oracle(self, kind, periods):
        for theta in THETAS:
            np.testing.assert_allclose(
                sorted_eigs(kind, periods, None, theta),
                free_band_values(kind, periods, theta),
                atol=1e-10,
            )

    @pytest.mark.parametrize("periods", [Periods(1, 1), Periods(2, 2), Periods(3, 2)])
    def test_hexagonal_from_triangular(self, periods):
        for theta in THETAS:
            np.testing.assert_allclose(
                sorted_eigs(LatticeKind.HEXAGONAL, periods, None, theta),
                hex_bands_from_tri(periods, theta),
                atol=1e-10,
            )

    def test_dispersion_values(self):
        p = Periods(1, 1)
        assert dispersion_square(p, (0.0, 0.0), (0, 0)) == pytest.approx(4.0)
        assert dispersion_tri(p, (0.0, 0.0), (0, 0)) == pytest.approx(6.0)
        assert dispersion_sqn(p, (0.0, 0.0), (0, 0)) == pytest.approx(8.0)
        assert dispersion_sqn(p, (math.pi, 0.0), (0, 0)) == pytest.approx(-4.0)
        assert dispersion_tri(p, (2 * math.pi / 3, 4 * math.pi / 3), (0, 0)) == pytest.approx(-3.0)


class TestHexagonalStructure:
    """Sublattice structure of the free hexagonal matrix."""

    def test_block_square(self):
        periods = Periods(2, 3)
        theta = (0.9, 2.2)
        f = hex_triangular_blocks(periods, theta)
        t = build_floquet(LatticeKind.TRIANGULAR, periods, None, theta)
        np.testing.assert_allclose(f @ f.conj().T, t + 3 * np.eye(6), atol=1e-12)
        np.testing.assert_allclose(f.conj().T @ f, t + 3 * np.eye(6), atol=1e-12)

    def test_anticommutator_vanishes(self):
        for theta in THETAS:
            assert anticommutator_residual(Periods(2, 2), theta) < 1e-14

    def test_z_potential_opens_exact_gap(self):
        """With Q = lambda Z the eigenvalues are +-sqrt(lambda^2 + |f|^2)."""
        lam = 0.3
        q = scaled(builtin("hex-1x1-Z"), lam)
        for theta in THETAS:
            free = sorted_eigs(LatticeKind.HEXAGONAL, Periods(1, 1), None, theta)
            radius = math.sqrt(lam ** 2 + free[1] ** 2)
            values = sorted_eigs(LatticeKind.HEXAGONAL, Periods(1, 1), q, theta)
            np.testing.assert_allclose(values, [-radius, radius], atol=1e-12)
