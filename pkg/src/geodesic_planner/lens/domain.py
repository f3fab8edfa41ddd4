"""Dirichlet domain of the lens space L(p;1) centered at q0 = (1, 0, 0, 0).

The normal domain is the intersection of the open half-spaces
<u_k, r> > 0 with u_k = q0 - Psi_k q0. Every u_k lies in the first
coordinate plane, so the whole boundary geometry is two dimensional.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator

import numpy as np

from ..constants import BOUNDARY_TOL, EXHAUSTIVE_SUBSET_P_MAX, SOLUTION_CIRCLE_SAMPLES
from ..errors import EmptyInput, IndexOutOfRange, InvalidInputError, SingularIndex
from ..geometry.models import UnitVector
from ..spaces.isometry import realify
from ..spaces.models import complex_coords, real_coords

Q0 = np.array([1.0, 0.0, 0.0, 0.0])


def _check_p(p: int) -> None:
    if p < 3:
        raise InvalidInputError(f"lens parameter p must be at least 3, got {p}")


def _check_index(p: int, k: int) -> None:
    if not 1 <= k <= p - 1:
        raise IndexOutOfRange(f"index {k} outside 1..{p - 1}")


@dataclass(frozen=True)
class DeckAction:
    """The Z_p action Psi_m (z1, z2) = (w^m z1, w^m z2), w = exp(2 pi i / p)."""

    p: int

    def __post_init__(self) -> None:
        _check_p(self.p)

    def apply(self, m: int, coords: np.ndarray) -> np.ndarray:
        z = complex_coords(np.asarray(coords, dtype=float))
        return real_coords(z * np.exp(2j * math.pi * (m % self.p) / self.p))

    def compose(self, m: int, k: int) -> int:
        """Index of Psi_m o Psi_k."""
        return (m + k) % self.p

    def matrix(self, m: int) -> np.ndarray:
        """Real 4x4 matrix of Psi_m."""
        phase = np.exp(2j * math.pi * (m % self.p) / self.p)
        return realify(phase * np.eye(2))


def u_vector(p: int, k: int) -> np.ndarray:
    """Normal u_k = q0 - Psi_k q0 of the k-th bisector."""
    _check_p(p)
    _check_index(p, k)
    theta = 2.0 * math.pi * k / p
    return np.array([1.0 - math.cos(theta), -math.sin(theta), 0.0, 0.0])


def u_matrix(p: int) -> np.ndarray:
    """All normals u_1, ..., u_{p-1} as rows."""
    return np.stack([u_vector(p, k) for k in range(1, p)])


def sigma(p: int, l: int) -> float:
    """Half-angle tangent (1 - cos(2 pi l / p)) / sin(2 pi l / p)."""
    _check_p(p)
    _check_index(p, l)
    if 2 * l == p:
        raise SingularIndex(f"sigma is undefined for l = p / 2 = {l}")
    theta = 2.0 * math.pi * l / p
    return (1.0 - math.cos(theta)) / math.sin(theta)


@dataclass(frozen=True)
class BoundaryStratum:
    """A nonempty boundary stratum of the normal domain.

    Attributes:
        p: Lens parameter.
        level: Number of vanishing constraints, 1 or p - 1.
        indices: Sorted vanishing indices: (1,), (p - 1,) or (1, ..., p - 1).
    """

    p: int
    level: int
    indices: tuple[int, ...]

    def __post_init__(self) -> None:
        _check_p(self.p)
        full = tuple(range(1, self.p))
        if self.level == 1 and self.indices in ((1,), (self.p - 1,)):
            return
        if self.level == self.p - 1 and self.indices == full:
            return
        raise InvalidInputError(
            f"no nonempty stratum with level {self.level} and indices {self.indices} for p = {self.p}"
        )

    @classmethod
    def disk(cls, p: int, index: int) -> BoundaryStratum:
        return cls(p, 1, (index,))

    @classmethod
    def circle(cls, p: int) -> BoundaryStratum:
        return cls(p, p - 1, tuple(range(1, p)))

    @classmethod
    def from_indices(cls, p: int, indices: Iterable[int]) -> BoundaryStratum:
        ordered = tuple(sorted(indices))
        return cls(p, len(ordered), ordered)

    @property
    def is_circle(self) -> bool:
        return self.level == self.p - 1

    @property
    def label(self) -> str:
        if self.is_circle:
            return "D(p-1)"
        return "D(1)_1" if self.indices == (1,) else "D(1)_p-1"


def is_allowed_pattern(p: int, indices: Iterable[int]) -> bool:
    """Whether a zero pattern is one of the three nonempty strata."""
    ordered = tuple(sorted(indices))
    return ordered in ((1,), (p - 1,), tuple(range(1, p)))


class DomainRegion(Enum):
    INTERIOR = "Interior"
    BOUNDARY = "Boundary"
    EXTERIOR = "Exterior"


@dataclass(frozen=True)
class DomainMembership:
    """Position of a lift relative to the normal domain."""

    region: DomainRegion
    zero_indices: tuple[int, ...] = ()

    def to_dict(self) -> dict[str, object]:
        return {"region": self.region.value, "zero_indices": list(self.zero_indices)}


def in_normal_domain(p: int, x: UnitVector, tol: float = BOUNDARY_TOL) -> DomainMembership:
    """Classify a unit lift as interior, boundary or exterior to the normal domain."""
    inner = u_matrix(p) @ x.coords
    if np.any(inner < -tol):
        return DomainMembership(DomainRegion.EXTERIOR)
    zeros = tuple(int(k) + 1 for k in np.nonzero(np.abs(inner) <= tol)[0])
    if zeros:
        return DomainMembership(DomainRegion.BOUNDARY, zeros)
    return DomainMembership(DomainRegion.INTERIOR)


def boundary_stratum(p: int, x: UnitVector, tol: float = BOUNDARY_TOL) -> BoundaryStratum | None:
    """Stratum of a boundary lift, None when x is not on an allowed stratum."""
    membership = in_normal_domain(p, x, tol)
    if membership.region is not DomainRegion.BOUNDARY:
        return None
    if not is_allowed_pattern(p, membership.zero_indices):
        return None
    return BoundaryStratum.from_indices(p, membership.zero_indices)


def in_half_space(q: np.ndarray, r: np.ndarray, v: np.ndarray) -> bool:
    """Whether v is strictly closer to q than to r on the sphere.

    For unit q, r, v this holds exactly when <v, q - r> > 0.
    """
    return float(np.dot(np.asarray(v, dtype=float), np.asarray(q) - np.asarray(r))) > 0.0


def covering_degree(p: int, stratum: BoundaryStratum) -> int:
    """Degree of the covering from the boundary stratum onto its image in L(p;1).

    The two disks D(1)_1 and D(1)_{p-1} are glued by Psi_1 into a trivial
    double cover of A(1); the circle covers A(p-1) p times.
    """
    if stratum.p != p:
        raise InvalidInputError(f"stratum belongs to p = {stratum.p}, not {p}")
    return p if stratum.is_circle else 2


# =============================================================================
# Constraint sets
# =============================================================================


def iter_index_sets(p: int) -> Iterator[tuple[int, ...]]:
    """Index sets checked exhaustively: all nonempty subsets for small p.

    For larger p only singletons, pairs and the full set are enumerated;
    any set of two or more indices already forces (a, b) = 0.
    """
    indices = range(1, p)
    if p <= EXHAUSTIVE_SUBSET_P_MAX:
        for size in range(1, p):
            yield from itertools.combinations(indices, size)
        return
    yield from ((k,) for k in indices)
    yield from itertools.combinations(indices, 2)
    yield tuple(indices)


def solution_circle(p: int, indices: tuple[int, ...], samples: int = SOLUTION_CIRCLE_SAMPLES) -> np.ndarray:
    """Sample the unit solutions of <u_k, q> = 0 for k in indices.

    A single constraint leaves a line in the (a, b) plane, giving points
    (s cos phi, s sin phi, t, 0) with s^2 + t^2 = 1; two or more force
    a = b = 0 and leave the circle (0, 0, cos psi, sin psi).
    """
    rows = np.stack([u_vector(p, k) for k in indices])[:, :2]
    psi = (np.arange(samples) + 0.5) * (2.0 * math.pi / samples)
    out = np.zeros((samples, 4))
    if np.linalg.matrix_rank(rows, tol=BOUNDARY_TOL) >= 2:
        out[:, 2] = np.cos(psi)
        out[:, 3] = np.sin(psi)
        return out
    _, _, vt = np.linalg.svd(rows)
    direction = vt[-1]
    out[:, :2] = np.cos(psi)[:, None] * direction
    out[:, 2] = np.sin(psi)
    return out


def constraint_set_feasible(p: int, indices: Iterable[int]) -> bool:
    """Whether exactly the constraints in indices can vanish on the closed domain.

    Feasible means some unit q has <u_k, q> = 0 for k in indices and
    <u_j, q> > 0 for every other j.
    """
    _check_p(p)
    chosen = tuple(sorted(set(indices)))
    if not chosen:
        raise EmptyInput("constraint set is empty")
    for k in chosen:
        _check_index(p, k)
    others = [j for j in range(1, p) if j not in chosen]
    points = solution_circle(p, chosen)
    if not others:
        return True
    inner = points @ np.stack([u_vector(p, j) for j in others]).T
    return bool(np.any(np.all(inner > BOUNDARY_TOL, axis=1)))
