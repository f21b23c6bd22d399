"""Tests for the error hierarchy and CLI diagnostics."""

import pytest

from lattice_floquet.core.errors import (
    LatticeFloquetError,
    PeriodsError,
    PotentialError,
    HermiticityError,
    EigenSolverError,
    OutsideHullError,
    FitError,
    SolutionFamilyError,
    ParameterRangeError,
    unknown_name_error,
    describe_error,
)


def test_periods_error():
    """Test PeriodsError carries the offending field."""
    error = PeriodsError("p1 must be positive", field="p1")
    assert "p1 must be positive" in str(error)
    assert error.field == "p1"


def test_hermiticity_error():
    """Test HermiticityError carries the deviation."""
    error = HermiticityError("not Hermitian", deviation=0.5)
    assert error.deviation == 0.5


def test_eigensolver_error():
    """Test EigenSolverError carries size and theta."""
    error = EigenSolverError("no convergence", size=8, theta=(0.1, 0.2))
    assert error.size == 8
    assert error.theta == (0.1, 0.2)


def test_outside_hull_error():
    """Test OutsideHullError message names the energy and hull."""
    error = OutsideHullError(7.0, (-3.0, 6.0))
    assert error.energy == 7.0
    assert error.hull == (-3.0, 6.0)
    assert "7" in str(error) and "-3" in str(error)


def test_solution_family_error():
    """Test SolutionFamilyError records where the family was found."""
    error = SolutionFamilyError("sqn_construction", -1.0, (0.0, 2.0))
    assert error.system == "sqn_construction"
    assert error.point == (0.0, 2.0)


def test_parameter_range_error():
    """Test ParameterRangeError formats name, value and range."""
    error = ParameterRangeError("lambda", 0.7, "0 < lambda <= 0.5")
    assert error.name == "lambda"
    assert error.value == 0.7
    assert "0 < lambda <= 0.5" in str(error)


@pytest.mark.parametrize("cls", [
    PeriodsError, PotentialError, HermiticityError, EigenSolverError,
    OutsideHullError, FitError, SolutionFamilyError, ParameterRangeError,
])
def test_hierarchy(cls):
    """Every error derives from LatticeFloquetError."""
    assert issubclass(cls, LatticeFloquetError)


def test_unknown_name_lists_valid_names():
    """Test the unknown-name message lists all valid names."""
    error = unknown_name_error("builtin", "tri-3x3", ["tri-2x2", "hex-2x2"])
    assert isinstance(error, PotentialError)
    assert "tri-2x2, hex-2x2" in str(error)
    assert error.field == "name"


class TestDescribeError:
    """One-line diagnostics for the command line."""

    def test_eigensolver_with_theta(self):
        message = describe_error(EigenSolverError("boom", size=4, theta=(1.0, 2.0)))
        assert "4x4" in message
        assert "theta=(1.0, 2.0)" in message

    def test_field_is_named(self):
        message = describe_error(PotentialError("bad values", field="values"))
        assert "(field: values)" in message

    def test_fit_condition(self):
        message = describe_error(FitError("ill-conditioned", condition=1e12))
        assert "condition number" in message

    def test_unexpected(self):
        assert describe_error(RuntimeError("x")).startswith("Unexpected error")
