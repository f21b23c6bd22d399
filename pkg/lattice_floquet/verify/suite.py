"""
Verification suites.

A suite is an ordered list of checks. Each check returns a CheckResult; checks
run in parallel through map_ordered and the report keeps suite order.
"""

import math
import logging
from dataclasses import asdict, dataclass, field
from typing import Any, Callable, Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from lattice_floquet.core.errors import LatticeFloquetError, describe_error, unknown_name_error
from lattice_floquet.core.executor import map_ordered
from lattice_floquet.lattice import LatticeKind, Periods
from lattice_floquet.potentials import (
    PeriodicPotential,
    builtin,
    make_potential,
    random_potential,
    scaled,
)
from lattice_floquet.spectral.bands import band_edges, gap_at, spectrum
from lattice_floquet.spectral.floquet import (
    anticommutator_residual,
    free_band_values,
    hex_bands_from_tri,
    sorted_eigs,
)
from lattice_floquet.verify import census, ehm, hexagonal, triangular, trig

logger = logging.getLogger(__name__)

SUITES = ("all", "tri", "hex", "ehm", "lemmas", "floquet")

ENSEMBLE_SIZE = 25

PASS = "pass"
FAIL = "fail"
ERROR = "error"


@dataclass(frozen=True)
class CheckResult:
    check_id: str
    status: str
    measured: Any
    expected: Any
    tolerance: Optional[float] = None

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass
class SuiteContext:
    """Shared inputs of one suite run; overrides replace builtin potentials by name."""

    overrides: Mapping[str, PeriodicPotential] = field(default_factory=dict)
    seed: int = 0

    def potential(self, name: str) -> PeriodicPotential:
        if name in self.overrides:
            return self.overrides[name]
        return builtin(name)


Check = Tuple[str, Callable[[SuiteContext], CheckResult]]


def _at_most(check_id: str, measured: float, bound: float) -> CheckResult:
    ok = math.isfinite(measured) and measured <= bound
    return CheckResult(check_id, PASS if ok else FAIL, float(measured), f"<= {bound:g}", bound)


def _truth(check_id: str, measured: Any, expected: Any, ok: bool) -> CheckResult:
    return CheckResult(check_id, PASS if ok else FAIL, measured, expected, None)


def _rounded(points) -> List[List[float]]:
    return [[round(x, 10), round(y, 10)] for x, y in points]


def _torus_gap(a: float, b: float) -> float:
    d = abs(a - b) % (2 * math.pi)
    return min(d, 2 * math.pi - d)


def _same_points(found, expected, tol: float) -> bool:
    if len(found) != len(expected):
        return False
    return all(
        any(math.hypot(_torus_gap(f[0], e[0]), _torus_gap(f[1], e[1])) <= tol for f in found)
        for e in expected
    )


# floquet


def _free_spectrum(kind: LatticeKind) -> Callable[[SuiteContext], CheckResult]:
    def check(ctx: SuiteContext) -> CheckResult:
        intervals = spectrum(band_edges(kind, Periods(2, 2), None))
        lo, hi = intervals.hull
        expected = kind.free_hull
        deviation = max(abs(lo - expected[0]), abs(hi - expected[1]))
        ok = intervals.components == 1 and deviation <= 1e-6
        return CheckResult(
            f"floquet.free_spectrum.{kind.value}",
            PASS if ok else FAIL,
            [list(i) for i in intervals.intervals],
            [list(expected)],
            1e-6,
        )
    return check


def _dispersion_oracle(ctx: SuiteContext) -> CheckResult:
    rng = np.random.default_rng(ctx.seed)
    worst = 0.0
    for _ in range(100):
        periods = Periods(int(rng.integers(1, 6)), int(rng.integers(1, 8)))
        theta = tuple(rng.uniform(0, 2 * np.pi, size=2))
        for kind in (LatticeKind.TRIANGULAR, LatticeKind.EHM):
            numeric = sorted_eigs(kind, periods, None, theta)
            worst = max(worst, float(np.max(np.abs(numeric - free_band_values(kind, periods, theta)))))
        numeric = sorted_eigs(LatticeKind.HEXAGONAL, periods, None, theta)
        worst = max(worst, float(np.max(np.abs(numeric - hex_bands_from_tri(periods, theta)))))
    return _at_most("floquet.dispersion_oracle", worst, 1e-10)


def _square_relation(ctx: SuiteContext) -> CheckResult:
    rng = np.random.default_rng(ctx.seed + 1)
    worst = 0.0
    for _ in range(20):
        periods = Periods(int(rng.integers(1, 4)), int(rng.integers(1, 4)))
        theta = tuple(rng.uniform(0, 2 * np.pi, size=2))
        worst = max(worst, hexagonal.hex_square_relation(periods, theta))
    return _at_most("floquet.hex_square_relation", worst, 1e-12)


def _hex_symmetry(ctx: SuiteContext) -> CheckResult:
    rng = np.random.default_rng(ctx.seed + 2)
    worst = 0.0
    for _ in range(20):
        periods = Periods(int(rng.integers(1, 4)), int(rng.integers(1, 4)))
        theta = tuple(rng.uniform(0, 2 * np.pi, size=2))
        values = sorted_eigs(LatticeKind.HEXAGONAL, periods, None, theta)
        worst = max(worst, float(np.max(np.abs(values + values[::-1]))))
        worst = max(worst, anticommutator_residual(periods, theta))
    return _at_most("floquet.hex_negation_symmetry", worst, 1e-10)


def _lipschitz(ctx: SuiteContext) -> CheckResult:
    rng = np.random.default_rng(ctx.seed + 3)
    kinds = list(LatticeKind)
    worst = -math.inf
    for i in range(50):
        kind = kinds[i % len(kinds)]
        periods = Periods(int(rng.integers(1, 4)), int(rng.integers(1, 4)))
        q = random_potential(kind, periods, 1.0, int(rng.integers(2 ** 31)))
        r = random_potential(kind, periods, 1.0, int(rng.integers(2 ** 31)))
        bound = float(np.max(np.abs(q.as_array() - r.as_array())))
        for _ in range(10):
            theta = tuple(rng.uniform(0, 2 * np.pi, size=2))
            shift = np.max(np.abs(sorted_eigs(kind, periods, q, theta) - sorted_eigs(kind, periods, r, theta)))
            worst = max(worst, float(shift) - bound)
    return _at_most("floquet.lipschitz_excess", worst, 1e-10)


def _arithmetic_no_gap(kind: LatticeKind, periods: Periods, max_components: int):
    def check(ctx: SuiteContext) -> CheckResult:
        counts = []
        gaps_ok = True
        for seed in range(ENSEMBLE_SIZE):
            q = random_potential(kind, periods, 0.01, ctx.seed + seed)
            intervals = spectrum(band_edges(kind, periods, q))
            counts.append(intervals.components)
            if kind is LatticeKind.HEXAGONAL:
                gaps_ok &= all(left < 0 < right for left, right in intervals.gaps())
        ok = max(counts) <= max_components and gaps_ok
        return _truth(
            f"floquet.no_gap.{kind.value}.{periods.p1}x{periods.p2}",
            counts,
            f"<= {max_components} component(s)",
            ok,
        )
    return check


def _exceptional_localization(kind: LatticeKind, periods: Periods):
    def check(ctx: SuiteContext) -> CheckResult:
        stray = []
        for seed in range(ENSEMBLE_SIZE):
            q = random_potential(kind, periods, 0.01, ctx.seed + 100 + seed)
            for left, right in spectrum(band_edges(kind, periods, q)).gaps():
                if not any(left < e < right for e in kind.exceptional_energies):
                    stray.append([left, right])
        return _truth(
            f"floquet.gap_localization.{kind.value}",
            stray,
            f"gaps only around {list(kind.exceptional_energies)}",
            not stray,
        )
    return check


def floquet_checks() -> List[Check]:
    checks: List[Check] = [
        (f"floquet.free_spectrum.{kind.value}", _free_spectrum(kind)) for kind in LatticeKind
    ]
    checks += [
        ("floquet.dispersion_oracle", _dispersion_oracle),
        ("floquet.hex_square_relation", _square_relation),
        ("floquet.hex_negation_symmetry", _hex_symmetry),
        ("floquet.lipschitz_excess", _lipschitz),
        ("floquet.no_gap.triangular.3x4", _arithmetic_no_gap(LatticeKind.TRIANGULAR, Periods(3, 4), 1)),
        ("floquet.no_gap.ehm.4x3", _arithmetic_no_gap(LatticeKind.EHM, Periods(4, 3), 1)),
        ("floquet.no_gap.hexagonal.3x2", _arithmetic_no_gap(LatticeKind.HEXAGONAL, Periods(3, 2), 2)),
        ("floquet.gap_localization.triangular", _exceptional_localization(LatticeKind.TRIANGULAR, Periods(2, 2))),
        ("floquet.gap_localization.ehm", _exceptional_localization(LatticeKind.EHM, Periods(3, 3))),
        ("floquet.gap_localization.hexagonal", _exceptional_localization(LatticeKind.HEXAGONAL, Periods(2, 2))),
    ]
    return checks


# triangular


def _tri_det_identity(ctx: SuiteContext) -> CheckResult:
    rng = np.random.default_rng(ctx.seed + 10)
    q = ctx.potential("tri-2x2")
    worst = 0.0
    for _ in range(200):
        theta = tuple(rng.uniform(0, 2 * np.pi, size=2))
        lam, eps = rng.uniform(0, 0.3), rng.uniform(-0.3, 0.3)
        poly = triangular.tri_det_poly(theta, lam, eps)
        numeric = triangular.tri_det_numeric(theta, lam, eps, q)
        worst = max(worst, abs(poly - numeric) / max(1.0, abs(numeric)))
    return _at_most("tri.det_identity", worst, 1e-9)


def _tri_proof_matrix(ctx: SuiteContext) -> CheckResult:
    rng = np.random.default_rng(ctx.seed + 11)
    worst = 0.0
    for _ in range(50):
        theta = tuple(rng.uniform(0, 2 * np.pi, size=2))
        lam, eps = rng.uniform(0, 0.3), rng.uniform(-0.3, 0.3)
        det = float(np.linalg.det(triangular.tri_proof_matrix(theta, lam, eps)).real)
        worst = max(worst, abs(det - triangular.tri_det_poly(theta, lam, eps)))
    return _at_most("tri.proof_matrix_det", worst, 1e-10)


def _tri_factorizations(ctx: SuiteContext) -> CheckResult:
    rng = np.random.default_rng(ctx.seed + 12)
    worst = 0.0
    for _ in range(50):
        lam, eps = rng.uniform(-1, 1, size=2)
        worst = max(
            worst,
            abs(triangular.tri_w1(lam, eps) - triangular.tri_w1_factored(lam, eps)),
            abs(triangular.tri_w2(lam, eps) - triangular.tri_w2_factored(lam, eps)),
        )
    return _at_most("tri.w_factorizations", worst, 1e-10)


def _tri_exact_gap(lam: float):
    def check(ctx: SuiteContext) -> CheckResult:
        q = scaled(ctx.potential("tri-2x2"), lam)
        intervals = spectrum(band_edges(LatticeKind.TRIANGULAR, Periods(2, 2), q))
        expected = triangular.tri_gap_exact(lam)
        gap = gap_at(intervals, -2.0)
        ok = (
            intervals.components == 2
            and gap is not None
            and max(abs(gap[0] - expected[0]), abs(gap[1] - expected[1])) <= 1e-6
        )
        return CheckResult(
            f"tri.exact_gap.{lam:g}", PASS if ok else FAIL,
            None if gap is None else list(gap), list(expected), 1e-6,
        )
    return check


def _tri_poly_min(a: float):
    def check(ctx: SuiteContext) -> CheckResult:
        value, _ = triangular.trig_poly_nonneg(a)
        ok = value >= -1e-9
        return CheckResult(f"tri.trig_poly_min.{a:g}", PASS if ok else FAIL, value, ">= 0", 1e-9)
    return check


def _tri_poly_max(ctx: SuiteContext) -> CheckResult:
    value, point = triangular.trig_poly_max(54.0)
    offset = math.hypot(*(min(t, 2 * math.pi - t) for t in point))
    ok = abs(value - 216.0) <= 1e-9 and offset <= 1e-6
    return CheckResult("tri.trig_poly_max.54", PASS if ok else FAIL, [value, list(point)], [216.0, [0.0, 0.0]], 1e-9)


def _tri_census(periods: Periods, energy: float):
    def check(ctx: SuiteContext) -> CheckResult:
        result = census.tri_j_census(periods, energy)
        report = result.report
        measured = {"j0": len(report.j0), "jplus": len(report.jplus), "jminus": len(report.jminus), "r": report.r}
        if energy == -2.0:
            ok = report.conserved and result.anchor in report.j_critical
        else:
            t = result.transversal
            measured["transversal"] = {"j0": len(t.j0), "jplus": len(t.jplus), "jminus": len(t.jminus)}
            ok = result.anchor in report.j0 and result.rules_out_band_edge
        return _truth(
            f"tri.census.{periods.p1}x{periods.p2}.{energy:g}",
            measured,
            "conserved, anchor classified, transversal j0 empty",
            ok,
        )
    return check


def tri_checks() -> List[Check]:
    checks: List[Check] = [
        ("tri.det_identity", _tri_det_identity),
        ("tri.proof_matrix_det", _tri_proof_matrix),
        ("tri.w_factorizations", _tri_factorizations),
    ]
    checks += [(f"tri.exact_gap.{lam:g}", _tri_exact_gap(lam)) for lam in (0.05, 0.1, 0.2)]
    checks += [(f"tri.trig_poly_min.{a:g}", _tri_poly_min(a)) for a in (0.0, 27.0, 54.0)]
    checks.append(("tri.trig_poly_max.54", _tri_poly_max))
    for periods, energy in ((Periods(2, 3), 1.0), (Periods(3, 3), -2.0), (Periods(3, 4), -2.0), (Periods(4, 5), 4.5)):
        checks.append((f"tri.census.{periods.p1}x{periods.p2}.{energy:g}", _tri_census(periods, energy)))
    return checks


# hexagonal

_HEX_THETAS = ((0.0, 0.0), (np.pi, np.pi), (np.pi / 2, np.pi), (2 * np.pi / 3, 4 * np.pi / 3), (0.7, 2.1))


def _hex_coeffs(center: hexagonal.HexCenter):
    def check(ctx: SuiteContext) -> CheckResult:
        q = ctx.potential("hex-2x2")
        worst = 0.0
        for theta in _HEX_THETAS:
            for s in (-0.5, -0.05, 0.0, 0.25, 0.5):
                fitted = hexagonal.hex_det_coeffs(theta, s, center, q)
                for power, value in hexagonal.hex_closed_form_coeffs(theta, s, center).items():
                    worst = max(worst, abs(fitted[power] - value))
        return _at_most(f"hex.det_coeffs.{center.value}", worst, 1e-6)
    return check


def _hex_golden(ctx: SuiteContext) -> CheckResult:
    measured = [
        hexagonal.hex_x0((np.pi / 2, np.pi)),
        hexagonal.hex_x0((np.pi / 4, 3 * np.pi / 4)),
        hexagonal.hex_y0((0.0, 0.0)),
        hexagonal.hex_y0((2 * np.pi / 3, 4 * np.pi / 3)),
        hexagonal.hex_x6((np.pi, np.pi), 0.5, 1),
        hexagonal.hex_x6((0.0, 0.0), -0.5, 1),
    ]
    expected = [-16.0, -4.0, 9.0, 0.0, 12.0, 28.0]
    ok = all(abs(m - e) <= 1e-9 for m, e in zip(measured, expected))
    return _truth("hex.golden_values", measured, expected, ok)


def _hex_y0_nonneg(ctx: SuiteContext) -> CheckResult:
    value, _ = hexagonal.hex_Y0_nonneg()
    return CheckResult("hex.y0_nonneg", PASS if value >= -1e-9 else FAIL, value, ">= 0", 1e-9)


def _hex_y0_det(ctx: SuiteContext) -> CheckResult:
    rng = np.random.default_rng(ctx.seed + 20)
    worst = 0.0
    for _ in range(20):
        theta = tuple(rng.uniform(0, 2 * np.pi, size=2))
        worst = max(worst, abs(hexagonal.hex_y0(theta) - hexagonal.hex_y0_determinant(theta)))
    return _at_most("hex.y0_is_free_determinant", worst, 1e-10)


def _hex_z_gap(lam: float):
    def check(ctx: SuiteContext) -> CheckResult:
        q = scaled(ctx.potential("hex-1x1-Z"), lam)
        intervals = spectrum(band_edges(LatticeKind.HEXAGONAL, q.periods, q))
        gap = gap_at(intervals, 0.0)
        ok = gap is not None and max(abs(gap[0] + lam), abs(gap[1] - lam)) <= 1e-6
        return CheckResult(
            f"hex.z_gap.{lam:g}", PASS if ok else FAIL,
            None if gap is None else list(gap), [-lam, lam], 1e-6,
        )
    return check


def _hex_bounds(lam: float):
    def check(ctx: SuiteContext) -> CheckResult:
        bounds = hexagonal.hex_gap_bounds(lam, ctx.potential("hex-2x2"))
        return _truth(f"hex.gap_bounds.{lam:g}", bounds, "all bounds hold", all(bounds.values()))
    return check


def _hex_x3(ctx: SuiteContext) -> CheckResult:
    q = ctx.potential("hex-2x2")
    worst = 0.0
    for center in (hexagonal.HexCenter.PLUS1, hexagonal.HexCenter.MINUS1):
        for s in (-0.5, 0.0, 0.3):
            fitted = hexagonal.hex_linear_coeffs(q, (0.0, 0.0), s, center)
            worst = max(worst, float(np.max(np.abs(fitted[:3]))))
            worst = max(worst, abs(fitted[3] - hexagonal.hex_x3_leading(q, s, center)))
    return _at_most("hex.x3_compression", worst, 1e-8)


def _hex_impossibility(ctx: SuiteContext) -> CheckResult:
    ok = hexagonal.hex_linear_gap_impossibility(ctx.potential("hex-2x2"), 1.0, [1e-3])
    return _truth("hex.linear_gap_impossibility", ok, True, ok)


def _hex_fit_stability(ctx: SuiteContext) -> CheckResult:
    from lattice_floquet.verify.fitting import circle_nodes

    q = ctx.potential("hex-2x2")
    theta, s = (0.7, 2.1), 0.1
    full = hexagonal.hex_det_coeffs(theta, s, "plus1", q)
    half = hexagonal.hex_det_coeffs(theta, s, "plus1", q, nodes=circle_nodes(16, 0.5))
    return _at_most("hex.fit_stability", float(np.max(np.abs(full - half))), 1e-7)


def hex_checks() -> List[Check]:
    checks: List[Check] = [
        (f"hex.det_coeffs.{c.value}", _hex_coeffs(c)) for c in hexagonal.HexCenter
    ]
    checks += [
        ("hex.golden_values", _hex_golden),
        ("hex.y0_nonneg", _hex_y0_nonneg),
        ("hex.y0_is_free_determinant", _hex_y0_det),
        ("hex.x3_compression", _hex_x3),
        ("hex.linear_gap_impossibility", _hex_impossibility),
        ("hex.fit_stability", _hex_fit_stability),
    ]
    checks += [(f"hex.z_gap.{lam:g}", _hex_z_gap(lam)) for lam in (0.1, 0.25)]
    checks += [(f"hex.gap_bounds.{lam:g}", _hex_bounds(lam)) for lam in (0.05, 0.1)]
    return checks


# ehm

_EHM_THETAS = ((0.0, 0.0), (np.pi, 0.0), (np.pi, np.pi), (1.1, 2.3), (0.4, 5.9))


def _ehm_coeffs(ctx: SuiteContext) -> CheckResult:
    q = ctx.potential("ehm-3x3")
    worst = 0.0
    for theta in _EHM_THETAS:
        for s in (-0.5, -0.25, 0.05, 0.25, 0.9):
            fitted = ehm.ehm_det_coeffs(theta, s, q)
            worst = max(worst, float(np.max(np.abs(fitted - ehm.ehm_closed_form_coeffs(theta, s)))))
    return _at_most("ehm.det_coeffs", worst, 1e-6)


def _ehm_identities(ctx: SuiteContext) -> CheckResult:
    measured = {
        "y6_sum": ehm.ehm_y6_sum_residual(),
        "y8_derivative": ehm.ehm_y8_derivative_residual(),
        "y9_roots": ehm.ehm_y9_root_residual(ctx.potential("ehm-3x3")),
    }
    ok = measured["y6_sum"] <= 1e-9 and measured["y8_derivative"] <= 1e-12 and measured["y9_roots"] <= 1e-9
    return _truth("ehm.polynomial_identities", measured, "all ~ 0", ok)


def _ehm_golden(ctx: SuiteContext) -> CheckResult:
    at_pi_pi = ehm.ehm_closed_form_coeffs((np.pi, np.pi), 0.3)[0]
    at_pi_0 = ehm.ehm_closed_form_coeffs((np.pi, 0.0), 0.3)[:6]
    x6 = [ehm.ehm_closed_form_coeffs((np.pi, 0.0), s)[6] for s in (0.25, -0.25)]
    ok = abs(at_pi_pi - 4096) <= 1e-9 and float(np.max(np.abs(at_pi_0))) <= 1e-9 and max(x6) < -85
    return _truth("ehm.golden_values", {"x0_pi_pi": at_pi_pi, "x6_pi_0": x6}, {"x0_pi_pi": 4096, "x6_pi_0": "< -85"}, ok)


def _ehm_gap(ctx: SuiteContext) -> CheckResult:
    lam = 0.1
    q = scaled(ctx.potential("ehm-3x3"), lam)
    intervals = spectrum(band_edges(LatticeKind.EHM, q.periods, q))
    gap = gap_at(intervals, -1.0)
    ok = (
        intervals.components == 2
        and gap is not None
        and gap[0] <= -1 - lam / 10 and gap[1] >= -1 + lam / 10
        and gap[0] >= -1 - lam / 4 and gap[1] <= -1 + lam / 4
    )
    return _truth("ehm.gap_bounds.0.1", None if gap is None else list(gap), "(-1 -+ lam/10) within gap within (-1 -+ lam/4)", ok)


def _ehm_census(p1: int):
    def check(ctx: SuiteContext) -> CheckResult:
        result = census.ehm_j_census(Periods(p1, 3), -1.0)
        report = result.report
        ok = (
            report.conserved
            and not report.j0
            and report.counts == result.expected_counts
            and report.counts[0] != report.counts[1]
        )
        return _truth(f"ehm.census.{p1}x3", list(report.counts), list(result.expected_counts), ok)
    return check


def ehm_checks() -> List[Check]:
    checks: List[Check] = [
        ("ehm.det_coeffs", _ehm_coeffs),
        ("ehm.polynomial_identities", _ehm_identities),
        ("ehm.golden_values", _ehm_golden),
        ("ehm.gap_bounds.0.1", _ehm_gap),
    ]
    checks += [(f"ehm.census.{p1}x3", _ehm_census(p1)) for p1 in (1, 2, 4)]
    return checks


# lemmas

_TWO_THIRDS, _FOUR_THIRDS = 2 * math.pi / 3, 4 * math.pi / 3


def _solution_set(system: trig.TrigSystemId, energy: float, expected: Sequence[Tuple[float, float]]):
    def check(ctx: SuiteContext) -> CheckResult:
        found = trig.solve_trig_system(system, energy)
        return _truth(
            f"lemmas.{system.value}.{energy:g}",
            _rounded(found),
            _rounded(expected),
            _same_points(found, expected, 1e-8),
        )
    return check


def _construction(energy: float):
    def check(ctx: SuiteContext) -> CheckResult:
        x, y = trig.tri_construction_solution(energy)
        residual = max(abs(r) for r in trig.TrigSystemId.TRI_CONSTRUCTION.residual(x, y, energy))
        ok = residual <= 1e-12
        if energy != -2.0:
            ok = ok and abs(math.cos(x) + math.cos(y) - (-1 + math.sqrt(energy + 3))) <= 1e-12
            ok = ok and abs(math.cos(x) + math.cos(y)) > 0
        return _truth(f"lemmas.tri_construction.{energy:g}", residual, "<= 1e-12", ok)
    return check


def _sqn_families(energy: float):
    def check(ctx: SuiteContext) -> CheckResult:
        found = trig.solve_trig_system(trig.TrigSystemId.SQN_CONSTRUCTION, energy)
        families = trig.sqn_construction_families(energy)
        ok = bool(found) and all(
            any(
                abs(math.remainder(x - fam.x, 2 * math.pi)) <= 1e-8 and abs(math.cos(y) - fam.cos_y) <= 1e-8
                for fam in families
            )
            for x, y in found
        )
        return _truth(f"lemmas.sqn_construction.{energy:g}", _rounded(found), "x in {0, pi} with pinned cos y", ok)
    return check


def lemma_checks() -> List[Check]:
    tri_grad, sqn_grad = trig.TrigSystemId.TRI_GRAD, trig.TrigSystemId.SQN_GRAD
    cases = [(tri_grad, -2.0, [(0.0, math.pi), (math.pi, 0.0), (math.pi, math.pi)])]
    cases += [(tri_grad, e, []) for e in (-1.0, 1.0, 3.0, 5.0)]
    cases.append((sqn_grad, 0.0, [(math.pi, math.pi)]))
    cases.append((
        sqn_grad, -1.0,
        [(_TWO_THIRDS, _TWO_THIRDS), (_TWO_THIRDS, _FOUR_THIRDS), (_FOUR_THIRDS, _TWO_THIRDS), (_FOUR_THIRDS, _FOUR_THIRDS)],
    ))
    cases += [(sqn_grad, e, []) for e in (1.0, 3.0)]

    checks: List[Check] = [
        (f"lemmas.{system.value}.{energy:g}", _solution_set(system, energy, expected))
        for system, energy, expected in cases
    ]
    checks += [(f"lemmas.tri_construction.{e:g}", _construction(e)) for e in (-3.0, -2.0, 1.0, 6.0)]
    checks += [(f"lemmas.sqn_construction.{e:g}", _sqn_families(e)) for e in (0.5, 3.0)]
    return checks


_REGISTRY: Dict[str, Callable[[], List[Check]]] = {
    "floquet": floquet_checks,
    "tri": tri_checks,
    "hex": hex_checks,
    "ehm": ehm_checks,
    "lemmas": lemma_checks,
}


def suite_checks(name: str) -> List[Check]:
    """Ordered checks of a suite; 'all' concatenates the others."""
    if name == "all":
        return [c for key in ("lemmas", "floquet", "tri", "hex", "ehm") for c in _REGISTRY[key]()]
    if name not in _REGISTRY:
        raise unknown_name_error("suite", name, SUITES)
    return _REGISTRY[name]()


def _run_check(check: Check, ctx: SuiteContext) -> CheckResult:
    check_id, fn = check
    try:
        return fn(ctx)
    except (LatticeFloquetError, np.linalg.LinAlgError) as e:
        logger.warning("Check %s raised: %s", check_id, describe_error(e))
        return CheckResult(check_id, ERROR, describe_error(e), None, None)


def run_suite(
    name: str,
    overrides: Optional[Mapping[str, PeriodicPotential]] = None,
    threads: Optional[int] = None,
    seed: int = 0,
) -> List[CheckResult]:
    """
    Run a verification suite.

    Args:
        name: all, tri, hex, ehm, lemmas or floquet
        overrides: Builtin name -> replacement potential
        threads: Worker cap
        seed: Base seed for randomized checks

    Returns:
        CheckResults in suite order
    """
    ctx = SuiteContext(overrides=dict(overrides or {}), seed=seed)
    checks = suite_checks(name)
    logger.info("Running %d checks in suite '%s'", len(checks), name)
    return map_ordered(lambda check: _run_check(check, ctx), checks, threads)


def override_potential(name: str, values: Sequence[float]) -> PeriodicPotential:
    """A replacement for a builtin with the same lattice and periods."""
    original = builtin(name)
    return make_potential(original.kind, original.periods, values)
