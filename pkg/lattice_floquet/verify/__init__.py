"""Closed forms, trigonometric solution sets and the verification suites."""

from lattice_floquet.verify.suite import (
    SUITES,
    CheckResult,
    SuiteContext,
    override_potential,
    run_suite,
    suite_checks,
)

__all__ = [
    "SUITES",
    "CheckResult",
    "SuiteContext",
    "override_potential",
    "run_suite",
    "suite_checks",
]
