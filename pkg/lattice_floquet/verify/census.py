"""Perturb-and-count: classify degenerate free eigenvalues by directional derivative."""

import math
from dataclasses import dataclass
from typing import FrozenSet, Optional, Sequence, Tuple

from lattice_floquet.core.errors import ParameterRangeError
from lattice_floquet.lattice import LatticeKind, Periods
from lattice_floquet.spectral.floquet import (
    FloquetIndex,
    FloquetPoint,
    ThetaLike,
    dispersion_sqn,
    dispersion_tri,
    sorted_eigs,
)

_DISPERSIONS = {
    LatticeKind.TRIANGULAR: dispersion_tri,
    LatticeKind.EHM: dispersion_sqn,
}


@dataclass(frozen=True)
class JSetReport:
    """
    Census of Lambda_E(theta~) = {l : e_l(theta~) = E}.

    j0, jplus and jminus split it by the sign of beta . grad e_l;
    j_critical lists the members whose whole gradient vanishes.
    r is the multiplicity of E among the eigenvalues of the free Floquet
    matrix at theta~, counted independently of the split.
    """

    energy: float
    theta_tilde: FloquetPoint
    beta: Tuple[float, float]
    j0: FrozenSet[FloquetIndex]
    jplus: FrozenSet[FloquetIndex]
    jminus: FrozenSet[FloquetIndex]
    j_critical: FrozenSet[FloquetIndex]
    r: int

    @property
    def conserved(self) -> bool:
        return len(self.j0) + len(self.jplus) + len(self.jminus) == self.r

    @property
    def counts(self) -> Tuple[int, int]:
        return (len(self.jplus), len(self.jminus))


@dataclass(frozen=True)
class Census:
    """A JSetReport at a constructed theta~, with the index the construction targets."""

    report: JSetReport
    anchor: FloquetIndex
    expected_counts: Optional[Tuple[int, int]] = None
    transversal: Optional[JSetReport] = None

    @property
    def rules_out_band_edge(self) -> bool:
        """
        True when the two censuses cannot both hold at an edge of a gap at E.

        At an edge, a direction with empty j0 splits the level set evenly, r = 2s.
        Along beta that forces |J+| = |j0| + |J-| = s and |J-| = |j0| + |J+| = s,
        which leaves j0 empty. A nonempty j0 along beta is the contradiction.
        """
        if self.transversal is None:
            return False
        t = self.transversal
        return (
            self.report.conserved
            and t.conserved
            and not t.j0
            and not self.report.j_critical
            and bool(self.report.j0)
        )


def dispersion_gradient(
    kind: LatticeKind, periods: Periods, theta: ThetaLike, l: Sequence[int]
) -> Tuple[float, float]:
    """Gradient of e_l with respect to (theta1, theta2)."""
    x = (theta[0] + 2 * math.pi * l[0]) / periods.p1
    y = (theta[1] + 2 * math.pi * l[1]) / periods.p2
    gx = -2 * math.sin(x) - 2 * math.sin(x - y)
    gy = -2 * math.sin(y) + 2 * math.sin(x - y)
    if kind is LatticeKind.EHM:
        gx -= 2 * math.sin(x + y)
        gy -= 2 * math.sin(x + y)
    return (gx / periods.p1, gy / periods.p2)


def level_multiplicity(
    kind: LatticeKind, periods: Periods, energy: float, theta: ThetaLike, tol: float = 1e-9
) -> int:
    """Number of free Floquet eigenvalues at theta within tol of E."""
    eigs = sorted_eigs(kind, periods, None, theta)
    return int(sum(1 for e in eigs if abs(e - energy) <= tol))


def transversal_direction(
    kind: LatticeKind,
    periods: Periods,
    energy: float,
    theta_tilde: ThetaLike,
    tol: float = 1e-9,
    candidates: int = 64,
) -> Tuple[float, float]:
    """
    A unit direction that no level-set gradient at theta~ is orthogonal to.

    Scans angles in (0, pi) and keeps the one with the largest smallest
    |beta . grad e_l| over the level set.

    Raises:
        ParameterRangeError: If the level set holds a critical point
    """
    dispersion = _DISPERSIONS[kind]
    gradients = [
        dispersion_gradient(kind, periods, theta_tilde, (l1, l2))
        for l2 in range(periods.p2)
        for l1 in range(periods.p1)
        if abs(dispersion(periods, theta_tilde, (l1, l2)) - energy) <= tol
    ]
    if any(math.hypot(gx, gy) <= tol for gx, gy in gradients):
        raise ParameterRangeError("theta_tilde", tuple(theta_tilde), "no critical point on the level set")

    best, best_margin = (1.0, 0.0), -1.0
    for k in range(candidates):
        phi = math.pi * (k + 0.5) / candidates
        beta = (math.cos(phi), math.sin(phi))
        margin = min((abs(beta[0] * gx + beta[1] * gy) for gx, gy in gradients), default=math.inf)
        if margin > best_margin:
            best, best_margin = beta, margin
    return best


def j_sets(
    kind: LatticeKind,
    periods: Periods,
    energy: float,
    theta_tilde: ThetaLike,
    beta: Sequence[float],
    tol: float = 1e-9,
) -> JSetReport:
    """
    Split the level set at theta~ by the sign of beta . grad e_l.

    Args:
        kind: triangular or ehm
        periods: Periods
        energy: Energy E
        theta_tilde: Base quasi-momentum
        beta: Unit direction
        tol: Level-set membership and zero-derivative threshold

    Returns:
        JSetReport
    """
    if kind not in _DISPERSIONS:
        raise ParameterRangeError("kind", kind.value, "triangular or ehm")
    if abs(math.hypot(beta[0], beta[1]) - 1.0) > 1e-12:
        raise ParameterRangeError("beta", tuple(beta), "a unit vector")
    if not tol > 0:
        raise ParameterRangeError("tol", tol, "a positive number")

    dispersion = _DISPERSIONS[kind]
    theta = FloquetPoint(float(theta_tilde[0]), float(theta_tilde[1]))
    j0, jplus, jminus, critical = set(), set(), set(), set()
    for l2 in range(periods.p2):
        for l1 in range(periods.p1):
            l = FloquetIndex(l1, l2)
            if abs(dispersion(periods, theta, l) - energy) > tol:
                continue
            gx, gy = dispersion_gradient(kind, periods, theta, l)
            if math.hypot(gx, gy) <= tol:
                critical.add(l)
            slope = beta[0] * gx + beta[1] * gy
            if slope > tol:
                jplus.add(l)
            elif slope < -tol:
                jminus.add(l)
            else:
                j0.add(l)

    return JSetReport(
        energy=energy,
        theta_tilde=theta,
        beta=(float(beta[0]), float(beta[1])),
        j0=frozenset(j0),
        jplus=frozenset(jplus),
        jminus=frozenset(jminus),
        j_critical=frozenset(critical),
        r=level_multiplicity(kind, periods, energy, theta, tol),
    )


def _lift(p: int, angle: float) -> Tuple[float, int]:
    """Write p * angle = theta + 2 pi l with theta in [0, 2 pi) and 0 <= l < p."""
    total = p * angle
    l = math.floor(total / (2 * math.pi))
    theta = total - 2 * math.pi * l
    if theta >= 2 * math.pi - 1e-12:
        theta, l = 0.0, l + 1
    return theta, l % p


def tri_j_census(periods: Periods, energy: float, tol: float = 1e-9) -> Census:
    """
    Census at the quasi-momentum the triangular argument constructs.

    For E != -2 the construction uses the explicit (x, 2 pi - x) solution and
    beta parallel to (p1, p2), which puts the anchor in j0 with a nonzero gradient.
    A second census along a transversal direction, with empty j0, is attached.
    For E = -2 it uses a critical point of the dispersion and needs an odd period.
    """
    from lattice_floquet.verify.trig import tri_construction_solution

    if energy != -2.0:
        if not -3.0 < energy < 6.0:
            raise ParameterRangeError("E", energy, "-3 < E < 6")
        x, y = tri_construction_solution(energy)
        t1, l1 = _lift(periods.p1, x)
        t2, l2 = _lift(periods.p2, y)
        norm = math.hypot(periods.p1, periods.p2)
        beta = (periods.p1 / norm, periods.p2 / norm)
    elif periods.p1 % 2 == 1:
        t1, l1 = 0.0, 0
        if periods.p2 % 2 == 0:
            t2, l2 = 0.0, periods.p2 // 2
        else:
            t2, l2 = math.pi, (periods.p2 - 1) // 2
        beta = (0.0, 1.0)
    elif periods.p2 % 2 == 1:
        t2, l2 = 0.0, 0
        t1, l1 = 0.0, periods.p1 // 2
        beta = (1.0, 0.0)
    else:
        raise ParameterRangeError("periods", periods.as_tuple(), "at least one odd period at E = -2")

    report = j_sets(LatticeKind.TRIANGULAR, periods, energy, (t1, t2), beta, tol)
    transversal = None
    if energy != -2.0:
        beta2 = transversal_direction(LatticeKind.TRIANGULAR, periods, energy, (t1, t2), tol)
        transversal = j_sets(LatticeKind.TRIANGULAR, periods, energy, (t1, t2), beta2, tol)
    return Census(report=report, anchor=FloquetIndex(l1, l2), transversal=transversal)


def ehm_j_census(periods: Periods, energy: float, tol: float = 1e-9) -> Census:
    """
    Census at the quasi-momentum the EHM argument constructs.

    At E = -1 one period must avoid 3Z; the expected (|J+|, |J-|) is
    (p', 2p' + k) for the other period written as 3p' + k.
    Otherwise the x = 0 branch with cos y = (E - 2) / 6 is used.
    """
    if energy == -1.0:
        if periods.p1 % 3:
            q1, k1 = divmod(periods.p1, 3)
            q2, k2 = divmod(periods.p2, 3)
            theta = (2 * math.pi * k1 / 3, (k2 + 1) * math.pi / 4)
            beta = (1.0, 0.0)
            anchor = FloquetIndex(q1, 0)
            expected = (q2, 2 * q2 + k2)
        elif periods.p2 % 3:
            q1, k1 = divmod(periods.p1, 3)
            q2, k2 = divmod(periods.p2, 3)
            theta = ((k1 + 1) * math.pi / 4, 2 * math.pi * k2 / 3)
            beta = (0.0, 1.0)
            anchor = FloquetIndex(0, q2)
            expected = (q1, 2 * q1 + k1)
        else:
            raise ParameterRangeError("periods", periods.as_tuple(), "a period not divisible by 3 at E = -1")
        report = j_sets(LatticeKind.EHM, periods, energy, theta, beta, tol)
        return Census(report=report, anchor=anchor, expected_counts=expected)

    if not -4.0 < energy < 8.0:
        raise ParameterRangeError("E", energy, "-4 < E < 8")
    y = math.acos((energy - 2.0) / 6.0)
    t2, l2 = _lift(periods.p2, y)
    report = j_sets(LatticeKind.EHM, periods, energy, (0.0, t2), (1.0, 0.0), tol)
    return Census(report=report, anchor=FloquetIndex(0, l2))
