"""Tests for the hexagonal determinant expansions and gap bounds."""

import math

import numpy as np
import pytest

from lattice_floquet.core.errors import ParameterRangeError, PotentialError
from lattice_floquet.lattice import Periods
from lattice_floquet.potentials import builtin, make_potential
from lattice_floquet.spectral.bands import GridSpec
from lattice_floquet.verify.fitting import circle_nodes
from lattice_floquet.verify.hexagonal import (
    HexCenter,
    hex_closed_form_coeffs,
    hex_det_coeffs,
    hex_linear_coeffs,
    hex_linear_gap_impossibility,
    hex_square_relation,
    hex_x0,
    hex_x3_leading,
    hex_x3_roots,
    hex_x6,
    hex_y0,
    hex_y0_determinant,
    hex_Y0_nonneg,
)

THETAS = [(0.0, 0.0), (math.pi, math.pi), (0.7, 2.1)]


class TestClosedForms:
    """Published coefficients against fitted determinants."""

    @pytest.mark.parametrize("center", list(HexCenter))
    @pytest.mark.parametrize("s", [-0.5, 0.0, 0.25])
    def test_fitted_matches_closed_form(self, center, s):
        for theta in THETAS:
            fitted = hex_det_coeffs(theta, s, center)
            for power, value in hex_closed_form_coeffs(theta, s, center).items():
                assert fitted[power] == pytest.approx(value, abs=1e-6)

    def test_center_energies(self):
        assert [c.energy for c in HexCenter] == [1.0, -1.0, 0.0]
        assert HexCenter.ZERO.shift_power == 1
        assert HexCenter.PLUS1.shift_power == 2

    def test_golden_values(self):
        assert hex_x0((math.pi / 2, math.pi)) == pytest.approx(-16.0)
        assert hex_x0((math.pi / 4, 3 * math.pi / 4)) == pytest.approx(-4.0)
        assert hex_y0((0.0, 0.0)) == pytest.approx(9.0)
        assert hex_y0((2 * math.pi / 3, 4 * math.pi / 3)) == pytest.approx(0.0, abs=1e-12)
        assert hex_x6((math.pi, math.pi), 0.5, 1) == pytest.approx(12.0)
        assert hex_x6((0.0, 0.0), -0.5, 1) == pytest.approx(28.0)

    def test_y0_is_free_determinant(self):
        rng = np.random.default_rng(4)
        for _ in range(10):
            theta = tuple(rng.uniform(0, 2 * np.pi, size=2))
            assert hex_y0_determinant(theta) == pytest.approx(hex_y0(theta), abs=1e-10)

    def test_y0_nonnegative(self):
        value, _ = hex_Y0_nonneg(grid_n=256)
        assert value >= -1e-9

    def test_fit_independent_of_radius(self):
        full = hex_det_coeffs((0.7, 2.1), 0.1, HexCenter.PLUS1)
        half = hex_det_coeffs((0.7, 2.1), 0.1, HexCenter.PLUS1, nodes=circle_nodes(16, 0.5))
        np.testing.assert_allclose(full, half, atol=1e-7)

    def test_offset_range(self):
        with pytest.raises(ParameterRangeError):
            hex_det_coeffs((0.0, 0.0), 1.5, HexCenter.ZERO)

    def test_wrong_lattice(self):
        with pytest.raises(PotentialError) as exc:
            hex_det_coeffs((0.0, 0.0), 0.0, HexCenter.ZERO, builtin("tri-2x2"))
        assert exc.value.field == "lattice"


class TestLinearShift:
    """Kernel compression at theta = 0."""

    @pytest.mark.parametrize("center", [HexCenter.PLUS1, HexCenter.MINUS1])
    @pytest.mark.parametrize("s", [-0.5, 0.3])
    def test_leading_coefficient(self, center, s):
        q = builtin("hex-2x2")
        fitted = hex_linear_coeffs(q, (0.0, 0.0), s, center)
        np.testing.assert_allclose(fitted[:3], 0.0, atol=1e-8)
        assert fitted[3] == pytest.approx(hex_x3_leading(q, s, center), abs=1e-8)

    def test_constant_potential(self):
        """A constant potential q compresses to q on the kernel."""
        q = make_potential("hexagonal", (2, 2), [0.5] * 8)
        np.testing.assert_allclose(hex_x3_roots(q, HexCenter.PLUS1), [0.5, 0.5, 0.5], atol=1e-12)
        assert abs(hex_x3_leading(q, 0.2, HexCenter.PLUS1)) == pytest.approx(64 * 0.3 ** 3)

    def test_roots_kill_leading_coefficient(self):
        q = builtin("hex-2x2")
        for center in (HexCenter.PLUS1, HexCenter.MINUS1):
            for root in hex_x3_roots(q, center):
                assert hex_x3_leading(q, root, center) == pytest.approx(0.0, abs=1e-9)

    def test_zero_center_rejected(self):
        with pytest.raises(ParameterRangeError):
            hex_x3_leading(builtin("hex-2x2"), 0.0, HexCenter.ZERO)


class TestGaps:

    def test_linear_windows_always_hit(self):
        grid = GridSpec(n1=16, n2=16)
        assert hex_linear_gap_impossibility(builtin("hex-2x2"), 1.0, [1e-3, 1e-2], grid)

    def test_slope_must_be_positive(self):
        with pytest.raises(ParameterRangeError):
            hex_linear_gap_impossibility(builtin("hex-2x2"), 0.0, [0.1])

    def test_periods_must_be_two_by_two(self):
        with pytest.raises(PotentialError) as exc:
            hex_linear_gap_impossibility(builtin("hex-1x1-Z"), 1.0, [0.1])
        assert exc.value.field == "periods"


@pytest.mark.parametrize("periods", [Periods(1, 1), Periods(2, 3)])
def test_square_relation(periods):
    assert hex_square_relation(periods, (0.4, 1.3)) < 1e-12
