"""Trigonometric systems behind the band-edge arguments and their solution sets."""

import math
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Callable, List, Optional, Tuple

import numpy as np
from scipy.optimize import least_squares

from lattice_floquet.core.config import get_default_config
from lattice_floquet.core.errors import ParameterRangeError, SolutionFamilyError
from lattice_floquet.verify.sweep import wrap_angle

logger = logging.getLogger(__name__)

Point = Tuple[float, float]

_MAX_SEEDS = 4096


def _tri_value(x, y, energy):
    return np.cos(x) + np.cos(y) + np.cos(x - y) - energy / 2


def _sqn_value(x, y, energy):
    return np.cos(x) + np.cos(y) + np.cos(x - y) + np.cos(x + y) - energy / 2


def _tri_construction(x, y, energy):
    return [_tri_value(x, y, energy), np.sin(x) + np.sin(y)]


def _tri_construction_jac(x, y):
    return [
        [-np.sin(x) - np.sin(x - y), -np.sin(y) + np.sin(x - y)],
        [np.cos(x), np.cos(y)],
    ]


def _tri_grad(x, y, energy):
    return [
        _tri_value(x, y, energy),
        np.sin(x) + np.sin(x - y),
        np.sin(y) - np.sin(x - y),
    ]


def _tri_grad_jac(x, y):
    return [
        [-np.sin(x) - np.sin(x - y), -np.sin(y) + np.sin(x - y)],
        [np.cos(x) + np.cos(x - y), -np.cos(x - y)],
        [-np.cos(x - y), np.cos(y) + np.cos(x - y)],
    ]


def _sqn_construction(x, y, energy):
    return [_sqn_value(x, y, energy), np.sin(x) + np.sin(x - y) + np.sin(x + y)]


def _sqn_value_grad(x, y):
    return [
        -np.sin(x) - np.sin(x - y) - np.sin(x + y),
        -np.sin(y) + np.sin(x - y) - np.sin(x + y),
    ]


def _sqn_construction_jac(x, y):
    return [
        _sqn_value_grad(x, y),
        [np.cos(x) + np.cos(x - y) + np.cos(x + y), -np.cos(x - y) + np.cos(x + y)],
    ]


def _sqn_grad(x, y, energy):
    return [
        _sqn_value(x, y, energy),
        np.sin(x) + np.sin(x - y) + np.sin(x + y),
        np.sin(y) - np.sin(x - y) + np.sin(x + y),
    ]


def _sqn_grad_jac(x, y):
    return [
        _sqn_value_grad(x, y),
        [np.cos(x) + np.cos(x - y) + np.cos(x + y), -np.cos(x - y) + np.cos(x + y)],
        [-np.cos(x - y) + np.cos(x + y), np.cos(y) + np.cos(x - y) + np.cos(x + y)],
    ]


class TrigSystemId(str, Enum):
    """Named residual systems F(x, y; E) = 0."""

    TRI_CONSTRUCTION = "tri_construction"
    TRI_GRAD = "tri_grad"
    SQN_CONSTRUCTION = "sqn_construction"
    SQN_GRAD = "sqn_grad"

    @property
    def residual(self) -> Callable:
        return _SYSTEMS[self][0]

    @property
    def jacobian(self) -> Callable:
        return _SYSTEMS[self][1]

    @property
    def is_square(self) -> bool:
        return self in (TrigSystemId.TRI_CONSTRUCTION, TrigSystemId.SQN_CONSTRUCTION)


_SYSTEMS = {
    TrigSystemId.TRI_CONSTRUCTION: (_tri_construction, _tri_construction_jac),
    TrigSystemId.TRI_GRAD: (_tri_grad, _tri_grad_jac),
    TrigSystemId.SQN_CONSTRUCTION: (_sqn_construction, _sqn_construction_jac),
    TrigSystemId.SQN_GRAD: (_sqn_grad, _sqn_grad_jac),
}


def _torus_distance(a: Point, b: Point) -> float:
    d = np.abs(np.asarray(a) - np.asarray(b)) % (2 * np.pi)
    d = np.minimum(d, 2 * np.pi - d)
    return float(np.hypot(d[0], d[1]))


def _seeds(system: TrigSystemId, energy: float, grid_n: int) -> np.ndarray:
    """Grid points where the residual norm is a periodic local minimum and small."""
    t = 2 * np.pi * np.arange(grid_n) / grid_n
    g1, g2 = np.meshgrid(t, t, indexing="ij")
    norm = np.sqrt(sum(np.square(r) for r in system.residual(g1, g2, energy)))
    mask = norm <= 16 * (2 * np.pi / grid_n)
    for d1 in (-1, 0, 1):
        for d2 in (-1, 0, 1):
            if d1 or d2:
                mask &= norm <= np.roll(np.roll(norm, d1, axis=0), d2, axis=1)
    idx = np.flatnonzero(mask)
    idx = idx[np.argsort(norm.ravel()[idx], kind="stable")][:_MAX_SEEDS]
    return np.column_stack([g1.ravel()[idx], g2.ravel()[idx]])


def _polish(system: TrigSystemId, energy: float, seed: np.ndarray):
    result = least_squares(
        lambda p: np.asarray(system.residual(p[0], p[1], energy), dtype=float),
        seed,
        jac=lambda p: np.asarray(system.jacobian(p[0], p[1]), dtype=float),
        method="lm",
        xtol=1e-15,
        ftol=1e-15,
        gtol=1e-15,
    )
    return result.x, float(np.linalg.norm(result.fun))


def _is_family_point(system: TrigSystemId, energy: float, point: np.ndarray, tol: float) -> bool:
    """Step along the Jacobian null direction; a family survives the re-polish nearby."""
    jac = np.asarray(system.jacobian(point[0], point[1]), dtype=float)
    _, sing, vt = np.linalg.svd(jac)
    if sing[-1] > 1e-6 * max(1.0, sing[0]):
        return False
    nearby = point + 1e-3 * vt[-1]
    moved, residual = _polish(system, energy, nearby)
    return residual <= tol and _torus_distance(moved, point) > 1e-4


def solve_trig_system(
    system: TrigSystemId,
    energy: float,
    grid_n: Optional[int] = None,
    tol: Optional[float] = None,
    dedupe: Optional[float] = None,
) -> List[Point]:
    """
    All isolated solutions of a trigonometric system in [0, 2 pi)^2.

    Seeds come from local minima of the residual norm on a periodic grid;
    each seed is polished by Levenberg-Marquardt with the analytic Jacobian.
    Seeds whose polish does not reach tol are dropped.

    Args:
        system: Which system
        energy: Energy E
        grid_n: Seed grid size (default from config)
        tol: Accepted residual norm
        dedupe: Torus distance under which two solutions coincide

    Returns:
        Sorted list of (x, y)

    Raises:
        SolutionFamilyError: If a square system has a one-parameter family of solutions
    """
    trig_cfg = get_default_config()["trig"]
    grid_n = grid_n or trig_cfg["grid_n"]
    tol = tol if tol is not None else trig_cfg["tol"]
    dedupe = dedupe if dedupe is not None else trig_cfg["dedupe"]
    system = TrigSystemId(system)

    found: List[Point] = []
    for seed in _seeds(system, energy, grid_n):
        point, residual = _polish(system, energy, seed)
        if residual > tol:
            continue
        candidate = (wrap_angle(point[0]), wrap_angle(point[1]))
        if any(_torus_distance(candidate, other) <= dedupe for other in found):
            continue
        if system.is_square and _is_family_point(system, energy, np.array(candidate), tol):
            raise SolutionFamilyError(system.value, energy, candidate)
        found.append(candidate)

    logger.debug("%s at E=%g: %d solution(s)", system.value, energy, len(found))
    return sorted(found)


def tri_construction_solution(energy: float) -> Point:
    """
    The explicit solution with y = 2 pi - x.

    Args:
        energy: E in [-3, 6]

    Returns:
        (x, y) with cos x = (-1 + sqrt(3 + E)) / 2
    """
    if not -3.0 <= energy <= 6.0:
        raise ParameterRangeError("E", energy, "-3 <= E <= 6")
    c = (-1.0 + math.sqrt(3.0 + energy)) / 2.0
    x = math.acos(min(1.0, max(-1.0, c)))
    return (x, 2 * math.pi - x)


@dataclass(frozen=True)
class SolutionFamily:
    """Solutions with x fixed and cos y pinned, when that value is attainable."""

    x: float
    cos_y: float

    @property
    def attainable(self) -> bool:
        return -1.0 <= self.cos_y <= 1.0


def sqn_construction_families(energy: float) -> List[SolutionFamily]:
    """
    The two branches of the EHM construction system for E != -1.

    x = 0 with 1 + 2 cos y = (E + 1) / 3, and x = pi with 1 + 2 cos y = -(E + 1).
    """
    if energy == -1.0:
        raise SolutionFamilyError(TrigSystemId.SQN_CONSTRUCTION.value, energy, (0.0, 2 * math.pi / 3))
    return [
        SolutionFamily(0.0, ((energy + 1.0) / 3.0 - 1.0) / 2.0),
        SolutionFamily(math.pi, (-(energy + 1.0) - 1.0) / 2.0),
    ]
