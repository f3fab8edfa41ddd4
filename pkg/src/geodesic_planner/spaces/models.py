"""Data models for the supported model manifolds."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any

import numpy as np

from ..constants import CELL_ZERO_TOL, COINCIDENT_TOL
from ..errors import InvalidInputError, ManifoldMismatch
from ..geometry.models import GeodesicSegment, UnitVector
from ..geometry.quaternion import as_quaternions, qconj, qnorm, right_multiply


class ManifoldKind(Enum):
    """Family of a model manifold."""

    SPHERE = "sphere"
    COMPLEX_PROJECTIVE = "complex_projective"
    QUATERNIONIC_PROJECTIVE = "quaternionic_projective"
    LENS = "lens"


SPEC_PREFIXES: dict[ManifoldKind, str] = {
    ManifoldKind.SPHERE: "s",
    ManifoldKind.COMPLEX_PROJECTIVE: "cp",
    ManifoldKind.QUATERNIONIC_PROJECTIVE: "hp",
    ManifoldKind.LENS: "lens",
}


@dataclass(frozen=True)
class ModelManifold:
    """One of S^n, CP^n, HP^n or L(p;1), all normalized from the unit sphere.

    For lens spaces ``n`` holds the parameter p.
    """

    kind: ManifoldKind
    n: int

    def __post_init__(self) -> None:
        if self.kind is ManifoldKind.LENS and self.n < 3:
            raise InvalidInputError(f"lens parameter p must be at least 3, got {self.n}")
        if self.n < 1:
            raise InvalidInputError(f"dimension parameter must be at least 1, got {self.n}")

    @classmethod
    def sphere(cls, n: int) -> ModelManifold:
        return cls(ManifoldKind.SPHERE, n)

    @classmethod
    def complex_projective(cls, n: int) -> ModelManifold:
        return cls(ManifoldKind.COMPLEX_PROJECTIVE, n)

    @classmethod
    def quaternionic_projective(cls, n: int) -> ModelManifold:
        return cls(ManifoldKind.QUATERNIONIC_PROJECTIVE, n)

    @classmethod
    def lens(cls, p: int) -> ModelManifold:
        return cls(ManifoldKind.LENS, p)

    @property
    def p(self) -> int:
        """Lens parameter."""
        if self.kind is not ManifoldKind.LENS:
            raise InvalidInputError(f"{self.spec} is not a lens space")
        return self.n

    @property
    def ambient_dim(self) -> int:
        """Real dimension of the space holding unit lifts."""
        if self.kind is ManifoldKind.SPHERE:
            return self.n + 1
        if self.kind is ManifoldKind.COMPLEX_PROJECTIVE:
            return 2 * (self.n + 1)
        if self.kind is ManifoldKind.QUATERNIONIC_PROJECTIVE:
            return 4 * (self.n + 1)
        return 4

    @property
    def dim(self) -> int:
        """Real dimension of the manifold itself."""
        if self.kind is ManifoldKind.SPHERE:
            return self.n
        if self.kind is ManifoldKind.COMPLEX_PROJECTIVE:
            return 2 * self.n
        if self.kind is ManifoldKind.QUATERNIONIC_PROJECTIVE:
            return 4 * self.n
        return 3

    @property
    def diameter(self) -> float:
        if self.kind is ManifoldKind.SPHERE:
            return math.pi
        return math.pi / 2.0

    @property
    def is_projective(self) -> bool:
        return self.kind in (ManifoldKind.COMPLEX_PROJECTIVE, ManifoldKind.QUATERNIONIC_PROJECTIVE)

    @property
    def spec(self) -> str:
        """CLI spec string such as 's3', 'cp2' or 'lens7'."""
        return f"{SPEC_PREFIXES[self.kind]}{self.n}"

    @property
    def display_name(self) -> str:
        if self.kind is ManifoldKind.SPHERE:
            return f"S^{self.n}"
        if self.kind is ManifoldKind.COMPLEX_PROJECTIVE:
            return f"CP^{self.n}"
        if self.kind is ManifoldKind.QUATERNIONIC_PROJECTIVE:
            return f"HP^{self.n}"
        return f"L({self.n};1)"


def first_nonzero_index(values: np.ndarray, tol: float = CELL_ZERO_TOL) -> int:
    """Index of the first entry whose modulus exceeds tol."""
    mods = np.abs(values) if values.ndim == 1 else qnorm(values)
    hits = np.nonzero(mods > tol)[0]
    if hits.size == 0:
        raise InvalidInputError("all homogeneous coordinates vanish")
    return int(hits[0])


def complex_coords(lift: np.ndarray) -> np.ndarray:
    """Read a real lift (x0, y0, x1, y1, ...) as complex coordinates."""
    return lift[0::2] + 1j * lift[1::2]


def real_coords(z: np.ndarray) -> np.ndarray:
    out = np.empty(2 * z.size)
    out[0::2] = z.real
    out[1::2] = z.imag
    return out


@dataclass(frozen=True, eq=False)
class ManifoldPoint:
    """A point of a model manifold given by a unit lift."""

    manifold: ModelManifold
    lift: UnitVector

    def __post_init__(self) -> None:
        if self.lift.dim != self.manifold.ambient_dim:
            raise ManifoldMismatch(
                f"{self.manifold.spec} needs lifts in R^{self.manifold.ambient_dim}, "
                f"got R^{self.lift.dim}"
            )

    @classmethod
    def from_coords(cls, manifold: ModelManifold, coords: Any) -> ManifoldPoint:
        """Build a point from (not necessarily normalized) ambient coordinates."""
        return cls(manifold, UnitVector.normalized(coords))

    @property
    def coords(self) -> np.ndarray:
        return self.lift.coords

    def canonical_lift(self) -> np.ndarray:
        """Deterministic representative of the identification class.

        Used for hashing and serialization only; geometry never depends on it.
        """
        kind = self.manifold.kind
        coords = self.lift.coords
        if kind is ManifoldKind.SPHERE:
            return coords.copy()
        if kind is ManifoldKind.COMPLEX_PROJECTIVE:
            z = complex_coords(coords)
            k = first_nonzero_index(z)
            return real_coords(z * (np.conj(z[k]) / abs(z[k])))
        if kind is ManifoldKind.QUATERNIONIC_PROJECTIVE:
            quats = as_quaternions(coords)
            k = first_nonzero_index(quats)
            return right_multiply(coords, qconj(quats[k]) / qnorm(quats[k]))
        p = self.manifold.p
        z = complex_coords(coords)
        k = first_nonzero_index(z)
        wedge = 2.0 * math.pi / p
        phase = math.atan2(z[k].imag, z[k].real) % (2.0 * math.pi)
        m = (-math.floor(phase / wedge)) % p
        return real_coords(z * np.exp(2j * math.pi * m / p))

    def to_list(self) -> list[float]:
        return [float(c) for c in self.canonical_lift()]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ManifoldPoint):
            return NotImplemented
        if other.manifold != self.manifold:
            return False
        from .manifolds import distance

        return distance(self.manifold, self, other) < COINCIDENT_TOL

    def __hash__(self) -> int:
        return hash((self.manifold, tuple(np.round(self.canonical_lift(), 8))))


class StratumTag(Enum):
    """Cut-locus stratum of an ordered pair of points."""

    COINCIDENT = "Coincident"
    OFF_CUT = "OffCut"
    SPHERE_ANTIPODAL = "SphereAntipodal"
    PROJECTIVE_CUT = "ProjectiveCut"
    LENS_C1 = "LensC1"
    LENS_CP_MINUS_1 = "LensCpMinus1"

    @property
    def is_cut(self) -> bool:
        return self not in (StratumTag.COINCIDENT, StratumTag.OFF_CUT)


@dataclass(frozen=True)
class StratumLabel:
    """Classification of a pair with tie metadata."""

    tag: StratumTag
    tie_indices: tuple[int, ...] = ()
    margin: float = 0.0

    def to_dict(self) -> dict[str, Any]:
        return {
            "tag": self.tag.value,
            "tie_indices": list(self.tie_indices),
            "margin": self.margin,
        }


@dataclass(frozen=True)
class FamilyDescriptor:
    """A continuous family of minimizing geodesics."""

    family_dim: int
    parametrization: str  # "equatorial-sphere", "phase-circle" or "unit-quaternion-sphere"
    representative: GeodesicSegment | None = None


@dataclass(frozen=True)
class GeodesicEnumeration:
    """All minimizing geodesics between a pair, lifted to the unit sphere."""

    distance: float
    isolated: list[GeodesicSegment] = field(default_factory=list)
    family: FamilyDescriptor | None = None
    deck_indices: tuple[int, ...] = ()

    @property
    def count(self) -> int | None:
        """Number of minimizers, None for a continuous family."""
        if self.family is not None:
            return None
        return len(self.isolated)

    def to_dict(self) -> dict[str, Any]:
        doc: dict[str, Any] = {
            "distance": self.distance,
            "isolated": [
                {
                    "start": seg.start.to_list(),
                    "initial_velocity": seg.initial_velocity.to_list(),
                    "length": seg.length,
                }
                for seg in self.isolated
            ],
            "family": None,
        }
        if self.deck_indices:
            doc["deck_indices"] = list(self.deck_indices)
        if self.family is not None:
            rep = self.family.representative
            doc["family"] = {
                "family_dim": self.family.family_dim,
                "parametrization": self.family.parametrization,
                "representative": None
                if rep is None
                else {
                    "start": rep.start.to_list(),
                    "initial_velocity": rep.initial_velocity.to_list(),
                    "length": rep.length,
                },
            }
        return doc
