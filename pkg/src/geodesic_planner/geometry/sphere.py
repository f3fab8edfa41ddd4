"""Closed-form great-circle geodesy on the unit sphere.

All model spaces in this package are quotients of a round unit sphere, so
every geodesic computation reduces to the exponential and logarithm on
S^{d-1} in R^d together with the crossing time of a great circle through a
hyperplane.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..constants import ANTIPODAL_TOL, COINCIDENT_TOL, NO_CROSSING, TANGENT_TOL, VELOCITY_UNIT_TOL
from ..errors import InvalidInputError, NonTangent, NonUnit, OutsideHalfSpace
from .models import TangentAtPoint, UnitVector


@dataclass(frozen=True)
class DirectionFamily:
    """A continuous family of minimizing initial directions."""

    family_dim: int
    parametrization: str


@dataclass(frozen=True)
class LogResult:
    """All minimizing initial velocities from x to y."""

    distance: float
    velocities: list[TangentAtPoint] = field(default_factory=list)
    family: DirectionFamily | None = None


def great_circle_distance(a: np.ndarray, b: np.ndarray) -> float:
    """Angle between two unit vectors.

    Evaluated as 2 atan2(|a - b|, |a + b|), which equals arccos of the clamped
    inner product and stays accurate near 0 and pi.
    """
    return 2.0 * math.atan2(float(np.linalg.norm(a - b)), float(np.linalg.norm(a + b)))


def _check_unit_tangent(x: UnitVector, v: TangentAtPoint) -> None:
    if not np.allclose(v.base.coords, x.coords, atol=TANGENT_TOL):
        raise NonTangent("velocity is based at a different point")
    inner = float(np.dot(x.coords, v.vec))
    if abs(inner) > TANGENT_TOL:
        raise NonTangent(f"<x, v> = {inner!r} exceeds tolerance {TANGENT_TOL}")
    if not v.is_unit(VELOCITY_UNIT_TOL):
        raise NonUnit(f"velocity norm {v.norm!r} is not 1")


def sphere_exp(x: UnitVector, v: TangentAtPoint, t: float) -> UnitVector:
    """Follow the unit-speed great circle from x in direction v for time t.

    Args:
        x: Start point.
        v: Unit tangent vector based at x.
        t: Nonnegative arc length.

    Returns:
        cos(t) x + sin(t) v, renormalized.
    """
    _check_unit_tangent(x, v)
    if t < 0.0:
        raise InvalidInputError(f"t must be nonnegative, got {t!r}")
    return UnitVector.normalized(math.cos(t) * x.coords + math.sin(t) * v.vec)


def sphere_log_all(x: UnitVector, y: UnitVector) -> LogResult:
    """Enumerate every minimizing unit initial velocity from x to y.

    Returns:
        LogResult with one velocity for generic pairs, none when y = x, and an
        equatorial direction family of dimension d - 2 when y = -x.
    """
    if x.dim != y.dim:
        raise InvalidInputError(f"dimension mismatch: {x.dim} vs {y.dim}")
    distance = great_circle_distance(x.coords, y.coords)
    if distance < COINCIDENT_TOL:
        return LogResult(distance=distance)

    inner = float(np.dot(x.coords, y.coords))
    if inner <= -1.0 + ANTIPODAL_TOL:
        return LogResult(
            distance=math.pi,
            family=DirectionFamily(family_dim=x.dim - 2, parametrization="equatorial-sphere"),
        )

    w = y.coords - inner * x.coords
    # Re-project so the tangency survives cancellation in w
    w = w - float(np.dot(w, x.coords)) * x.coords
    w = w / np.linalg.norm(w)
    return LogResult(distance=distance, velocities=[TangentAtPoint(x, w)])


def hyperplane_crossing_time(x: UnitVector, v: TangentAtPoint, u: np.ndarray) -> float:
    """First time the geodesic from x along v leaves the half-space <., u> > 0.

    Solves cot(t) = -<v, u> / <x, u> on (0, pi).

    Args:
        x: Start point, strictly inside the half-space.
        v: Unit tangent at x.
        u: Nonzero normal of the bounding hyperplane.

    Returns:
        The crossing time in (0, pi], or NO_CROSSING.
    """
    _check_unit_tangent(x, v)
    u = np.asarray(u, dtype=float)
    if not np.any(u):
        raise InvalidInputError("hyperplane normal must be nonzero")
    a = float(np.dot(x.coords, u))
    if a <= 0.0:
        raise OutsideHalfSpace(f"<x, u> = {a!r} is not positive")
    b = float(np.dot(v.vec, u))
    t = math.atan2(a, -b)
    if 0.0 < t <= math.pi:
        return t
    return NO_CROSSING
