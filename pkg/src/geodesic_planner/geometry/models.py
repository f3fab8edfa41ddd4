"""Value types for great-circle geodesy in ambient Euclidean space."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..constants import TANGENT_TOL, UNIT_TOL, VELOCITY_UNIT_TOL
from ..errors import InvalidInputError, NonTangent, NonUnit


def _frozen_array(values: np.ndarray | list[float] | tuple[float, ...]) -> np.ndarray:
    arr = np.array(values, dtype=float)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class UnitVector:
    """A point of the unit sphere S^{d-1} in R^d."""

    coords: np.ndarray

    def __post_init__(self) -> None:
        arr = _frozen_array(self.coords)
        if arr.ndim != 1 or arr.size < 2:
            raise NonUnit(f"expected a flat vector, got shape {arr.shape}")
        norm = float(np.linalg.norm(arr))
        if abs(norm - 1.0) > UNIT_TOL:
            raise NonUnit(f"norm {norm!r} deviates from 1 by more than {UNIT_TOL}")
        object.__setattr__(self, "coords", arr)

    @classmethod
    def normalized(cls, values: np.ndarray | list[float] | tuple[float, ...]) -> UnitVector:
        """Build a unit vector by normalizing arbitrary nonzero coordinates."""
        arr = np.array(values, dtype=float)
        norm = float(np.linalg.norm(arr))
        if norm == 0.0:
            raise NonUnit("cannot normalize the zero vector")
        return cls(arr / norm)

    @property
    def dim(self) -> int:
        """Ambient dimension d."""
        return int(self.coords.size)

    def dot(self, other: UnitVector | np.ndarray) -> float:
        vec = other.coords if isinstance(other, UnitVector) else other
        return float(np.dot(self.coords, vec))

    def to_list(self) -> list[float]:
        return [float(c) for c in self.coords]


@dataclass(frozen=True, eq=False)
class TangentAtPoint:
    """A tangent vector at a point of the unit sphere."""

    base: UnitVector
    vec: np.ndarray

    def __post_init__(self) -> None:
        arr = _frozen_array(self.vec)
        if arr.shape != self.base.coords.shape:
            raise NonTangent(
                f"vector of shape {arr.shape} does not match base of shape {self.base.coords.shape}"
            )
        inner = float(np.dot(self.base.coords, arr))
        if abs(inner) > TANGENT_TOL:
            raise NonTangent(f"<base, vec> = {inner!r} exceeds tolerance {TANGENT_TOL}")
        object.__setattr__(self, "vec", arr)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.vec))

    def is_unit(self, tol: float = VELOCITY_UNIT_TOL) -> bool:
        return abs(self.norm - 1.0) <= tol

    def scaled(self, factor: float) -> TangentAtPoint:
        return TangentAtPoint(self.base, self.vec * factor)

    def to_list(self) -> list[float]:
        return [float(c) for c in self.vec]


@dataclass(frozen=True, eq=False)
class GeodesicSegment:
    """A great-circle arc given by start, unit initial velocity and length."""

    start: UnitVector
    initial_velocity: TangentAtPoint
    length: float

    def __post_init__(self) -> None:
        if self.length < 0.0:
            raise InvalidInputError(f"segment length must be nonnegative, got {self.length!r}")
        if self.initial_velocity.base is not self.start and not np.allclose(
            self.initial_velocity.base.coords, self.start.coords, atol=UNIT_TOL
        ):
            raise NonTangent("initial velocity is not based at the segment start")
        if self.length > 0.0 and not self.initial_velocity.is_unit():
            raise NonUnit(
                f"positive-length segment needs a unit velocity, got norm {self.initial_velocity.norm!r}"
            )
        if self.length == 0.0 and not (
            self.initial_velocity.is_unit() or self.initial_velocity.norm == 0.0
        ):
            raise NonUnit("zero-length segment needs a unit or zero velocity")

    def point_at(self, t: float) -> np.ndarray:
        """Ambient point at arc-length parameter t."""
        pt = np.cos(t) * self.start.coords + np.sin(t) * self.initial_velocity.vec
        return pt / np.linalg.norm(pt)

    @property
    def end(self) -> np.ndarray:
        return self.point_at(self.length)

    def samples(self, count: int) -> np.ndarray:
        """Evenly spaced points along the segment, endpoints included."""
        if count < 2:
            raise InvalidInputError("at least two samples are needed")
        ts = np.linspace(0.0, self.length, count)
        pts = np.cos(ts)[:, None] * self.start.coords + np.sin(ts)[:, None] * self.initial_velocity.vec
        return pts / np.linalg.norm(pts, axis=1, keepdims=True)
