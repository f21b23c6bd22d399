"""Tests for the verification suite runner."""

import pytest

from lattice_floquet.core.errors import PotentialError
from lattice_floquet.potentials import make_potential
from lattice_floquet.verify import (
    SUITES,
    CheckResult,
    SuiteContext,
    override_potential,
    run_suite,
    suite_checks,
)


def _check(suite, check_id):
    return dict(suite_checks(suite))[check_id]


class TestRegistry:

    def test_suite_names(self):
        assert SUITES == ("all", "tri", "hex", "ehm", "lemmas", "floquet")

    def test_all_concatenates_in_order(self):
        ids = [check_id for check_id, _ in suite_checks("all")]
        expected = [
            check_id
            for name in ("lemmas", "floquet", "tri", "hex", "ehm")
            for check_id, _ in suite_checks(name)
        ]
        assert ids == expected
        assert len(ids) == len(set(ids))

    def test_unknown_suite(self):
        with pytest.raises(PotentialError) as exc:
            suite_checks("kagome")
        assert "lemmas" in str(exc.value)

    def test_result_serializes(self):
        result = CheckResult("x.y", "pass", 1.0, "<= 2", 2.0)
        assert result.passed
        assert result.to_dict() == {
            "check_id": "x.y",
            "status": "pass",
            "measured": 1.0,
            "expected": "<= 2",
            "tolerance": 2.0,
        }


class TestRunSuite:

    def test_lemmas_pass(self):
        results = run_suite("lemmas", threads=2)
        assert [r.check_id for r in results] == [check_id for check_id, _ in suite_checks("lemmas")]
        failed = [r.to_dict() for r in results if not r.passed]
        assert not failed

    def test_single_checks_pass(self):
        ctx = SuiteContext()
        for suite, check_id in (
            ("tri", "tri.w_factorizations"),
            ("tri", "tri.proof_matrix_det"),
            ("tri", "tri.census.3x3.-2"),
            ("tri", "tri.census.2x3.1"),
            ("hex", "hex.golden_values"),
            ("hex", "hex.x3_compression"),
            ("ehm", "ehm.polynomial_identities"),
            ("ehm", "ehm.census.2x3"),
            ("floquet", "floquet.hex_square_relation"),
        ):
            result = _check(suite, check_id)(ctx)
            assert result.check_id == check_id
            assert result.passed, result.to_dict()


class TestOverrides:
    """Replacing a builtin must make the checks that depend on it fail."""

    def test_override_keeps_shape(self):
        q = override_potential("tri-2x2", [1, 1, 1, 1])
        assert q.kind.value == "triangular"
        assert q.periods.as_tuple() == (2, 2)

    def test_override_value_count(self):
        with pytest.raises(PotentialError):
            override_potential("tri-2x2", [1, 1])

    def test_constant_potential_closes_gap(self):
        ctx = SuiteContext(overrides={"tri-2x2": override_potential("tri-2x2", [1, 1, 1, 1])})
        result = _check("tri", "tri.exact_gap.0.1")(ctx)
        assert result.status == "fail"
        assert result.measured is None

    def test_other_potential_breaks_determinant_identity(self):
        ctx = SuiteContext(overrides={"tri-2x2": override_potential("tri-2x2", [1, -1, 1, -1])})
        assert _check("tri", "tri.det_identity")(ctx).status == "fail"

    def test_ehm_roots_follow_override(self):
        ctx = SuiteContext(overrides={"ehm-3x3": override_potential("ehm-3x3", [0.5] * 9)})
        assert _check("ehm", "ehm.polynomial_identities")(ctx).status == "fail"

    def test_mismatched_override_reports_error(self):
        """A check that raises is reported as an error rather than aborting the run."""
        bad = make_potential("triangular", (1, 1), [0.5])
        results = run_suite("tri", overrides={"tri-2x2": bad}, threads=1)
        by_id = {r.check_id: r for r in results}
        assert by_id["tri.exact_gap.0.1"].status == "error"
        assert "periods" in by_id["tri.exact_gap.0.1"].measured
        assert by_id["tri.w_factorizations"].passed


def test_regular_census_reports_transversal_split():
    result = _check("tri", "tri.census.4x5.4.5")(SuiteContext())
    assert result.passed, result.to_dict()
    transversal = result.measured["transversal"]
    assert transversal["j0"] == 0
    assert transversal["jplus"] + transversal["jminus"] == result.measured["r"]
