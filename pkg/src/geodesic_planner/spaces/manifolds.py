"""Distance, minimal geodesics and cut strata on the model manifolds.

Every model is a Riemannian quotient of a unit round sphere:

- S^n: the sphere itself.
- CP^n: S^{2n+1} modulo unit complex scalars (Hopf submersion).
- HP^n: S^{4n+3} modulo unit quaternions acting on the right.
- L(p;1): S^3 modulo the diagonal Z_p action (z1, z2) -> w^m (z1, z2).

Geodesics are great circles through a lift, horizontal for the projective
spaces. Lens deck inner products reduce to Re(w^m h) with h the Hermitian
product of the lifts, so the circle stratum is exactly h = 0.
"""

from __future__ import annotations

import logging
import math

import numpy as np

from ..constants import AMBIGUITY_FACTOR, ANTIPODAL_TOL, COINCIDENT_TOL, TANGENT_TOL, TIE_TOL
from ..errors import (
    AdjacencyViolation,
    AmbiguousNearCut,
    LemmaViolation,
    ManifoldMismatch,
    NonTangent,
    NonUnit,
)
from ..geometry.models import GeodesicSegment, TangentAtPoint, UnitVector
from ..geometry.quaternion import UNIT_I, UNIT_J, UNIT_K, hermitian, qconj, right_multiply
from ..geometry.sphere import (
    great_circle_distance,
    hyperplane_crossing_time,
    sphere_exp,
    sphere_log_all,
)
from .models import (
    FamilyDescriptor,
    GeodesicEnumeration,
    ManifoldKind,
    ManifoldPoint,
    ModelManifold,
    StratumLabel,
    StratumTag,
    complex_coords,
    real_coords,
)

logger = logging.getLogger(__name__)


# =============================================================================
# Lift arithmetic
# =============================================================================


def deck_translate(p: int, m: int, coords: np.ndarray) -> np.ndarray:
    """Apply Psi_m to a lift in R^4 = C^2."""
    z = complex_coords(coords)
    return real_coords(z * np.exp(2j * math.pi * m / p))


def deck_orbit(p: int, coords: np.ndarray) -> np.ndarray:
    """All p translates Psi_0 y, ..., Psi_{p-1} y as rows."""
    z = complex_coords(coords)
    phases = np.exp(2j * math.pi * np.arange(p) / p)
    zz = phases[:, None] * z[None, :]
    out = np.empty((p, 4))
    out[:, 0::2] = zz.real
    out[:, 1::2] = zz.imag
    return out


def deck_distances(p: int, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Great-circle distances from x to each deck translate of y."""
    orbit = deck_orbit(p, y)
    minus = np.linalg.norm(orbit - x, axis=1)
    plus = np.linalg.norm(orbit + x, axis=1)
    return 2.0 * np.arctan2(minus, plus)


def complex_hermitian(x: np.ndarray, y: np.ndarray) -> complex:
    """sum_k conj(x_k) y_k for real lifts read as complex vectors."""
    return complex(np.vdot(complex_coords(x), complex_coords(y)))


def projective_product(manifold: ModelManifold, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Hermitian product of lifts as a real 2-vector (CP) or quaternion (HP)."""
    if manifold.kind is ManifoldKind.COMPLEX_PROJECTIVE:
        h = complex_hermitian(x, y)
        return np.array([h.real, h.imag])
    return hermitian(x, y)


def align_to(manifold: ModelManifold, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Rotate the lift y in its fiber so that <x, y> is real and nonnegative."""
    if manifold.kind is ManifoldKind.COMPLEX_PROJECTIVE:
        h = complex_hermitian(x, y)
        if abs(h) == 0.0:
            return y.copy()
        return real_coords(complex_coords(y) * (np.conj(h) / abs(h)))
    if manifold.kind is ManifoldKind.QUATERNIONIC_PROJECTIVE:
        h = hermitian(x, y)
        norm = float(np.linalg.norm(h))
        if norm == 0.0:
            return y.copy()
        return right_multiply(y, qconj(h) / norm)
    return y.copy()


def vertical_basis(manifold: ModelManifold, lift: np.ndarray) -> list[np.ndarray]:
    """Unit vectors spanning the fiber directions at a lift."""
    if manifold.kind is ManifoldKind.COMPLEX_PROJECTIVE:
        return [real_coords(1j * complex_coords(lift))]
    if manifold.kind is ManifoldKind.QUATERNIONIC_PROJECTIVE:
        return [right_multiply(lift, q) for q in (UNIT_I, UNIT_J, UNIT_K)]
    return []


def horizontal_part(manifold: ModelManifold, lift: np.ndarray, vec: np.ndarray) -> np.ndarray:
    """Project an ambient vector onto the horizontal tangent space at a lift."""
    out = vec - float(np.dot(vec, lift)) * lift
    for e in vertical_basis(manifold, lift):
        out = out - float(np.dot(out, e)) * e
    return out


def hermitian_complement(manifold: ModelManifold, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Remove from y its Hermitian component along x (y - x <x, y>)."""
    if manifold.kind is ManifoldKind.COMPLEX_PROJECTIVE:
        h = complex_hermitian(x, y)
        return real_coords(complex_coords(y) - h * complex_coords(x))
    h = hermitian(x, y)
    return y - right_multiply(x, h)


def _require(manifold: ModelManifold, *points: ManifoldPoint) -> None:
    for pt in points:
        if pt.manifold != manifold:
            raise ManifoldMismatch(f"point on {pt.manifold.spec} used with {manifold.spec}")


def _ambiguity(message: str, margin: float) -> AmbiguousNearCut:
    logger.debug("ambiguous near cut: %s (margin %.3e)", message, margin)
    return AmbiguousNearCut(message, margin)


def _some_unit_normal(x: np.ndarray) -> np.ndarray:
    """A deterministic unit vector orthogonal to x."""
    axis = int(np.argmin(np.abs(x)))
    e = np.zeros_like(x)
    e[axis] = 1.0
    w = e - float(np.dot(e, x)) * x
    return w / np.linalg.norm(w)


# =============================================================================
# Operations
# =============================================================================


def distance(manifold: ModelManifold, x: ManifoldPoint, y: ManifoldPoint) -> float:
    """Quotient distance between two points.

    Returns:
        arccos<x, y> on spheres, arccos|<x, y>| on projective spaces and the
        minimum over deck translates on lens spaces.
    """
    _require(manifold, x, y)
    a, b = x.coords, y.coords
    if manifold.kind is ManifoldKind.SPHERE:
        return great_circle_distance(a, b)
    if manifold.is_projective:
        return great_circle_distance(a, align_to(manifold, a, b))
    return float(np.min(deck_distances(manifold.p, a, b)))


def _lens_ties(
    manifold: ModelManifold, x: ManifoldPoint, y: ManifoldPoint, tie_tol: float
) -> tuple[np.ndarray, float, tuple[int, ...], float]:
    """Deck distances, their minimum, tied indices and the margin to the rest."""
    dists = deck_distances(manifold.p, x.coords, y.coords)
    dmin = float(np.min(dists))
    gaps = dists - dmin
    ties = tuple(int(m) for m in np.nonzero(gaps <= tie_tol)[0])
    rest = gaps[gaps > tie_tol]
    if rest.size and float(np.min(rest)) < AMBIGUITY_FACTOR * tie_tol:
        raise _ambiguity(
            f"deck distance gap {float(np.min(rest)):.3e} inside the ambiguity band",
            float(np.min(rest)),
        )
    margin = float(np.min(rest)) - tie_tol if rest.size else tie_tol - float(np.max(gaps))
    return dists, dmin, ties, margin


def minimal_geodesics(
    manifold: ModelManifold,
    x: ManifoldPoint,
    y: ManifoldPoint,
    tie_tol: float = TIE_TOL,
) -> GeodesicEnumeration:
    """Enumerate every minimizing geodesic from x to y, lifted at x.

    Raises:
        AmbiguousNearCut: When the pair sits inside the band next to a cut stratum.
    """
    _require(manifold, x, y)
    a, b = x.coords, y.coords
    d = distance(manifold, x, y)
    if d < COINCIDENT_TOL:
        return GeodesicEnumeration(distance=d)

    start = x.lift
    if manifold.kind is ManifoldKind.SPHERE:
        gap = 1.0 + float(np.dot(a, b))
        if ANTIPODAL_TOL < gap < AMBIGUITY_FACTOR * ANTIPODAL_TOL:
            raise _ambiguity(f"1 + <x, y> = {gap:.3e} inside the ambiguity band", gap)
        log = sphere_log_all(start, y.lift)
        if log.family is not None:
            rep = GeodesicSegment(start, TangentAtPoint(start, _some_unit_normal(a)), math.pi)
            return GeodesicEnumeration(
                distance=math.pi,
                family=FamilyDescriptor(log.family.family_dim, log.family.parametrization, rep),
            )
        return GeodesicEnumeration(
            distance=log.distance,
            isolated=[GeodesicSegment(start, log.velocities[0], log.distance)],
        )

    if manifold.is_projective:
        h_norm = float(np.linalg.norm(projective_product(manifold, a, b)))
        if tie_tol < h_norm < AMBIGUITY_FACTOR * tie_tol:
            raise _ambiguity(f"|<x, y>| = {h_norm:.3e} inside the ambiguity band", h_norm)
        if h_norm <= tie_tol:
            w = hermitian_complement(manifold, a, b)
            w = horizontal_part(manifold, a, w)
            w = w / np.linalg.norm(w)
            complex_case = manifold.kind is ManifoldKind.COMPLEX_PROJECTIVE
            rep = GeodesicSegment(start, TangentAtPoint(start, w), math.pi / 2.0)
            return GeodesicEnumeration(
                distance=math.pi / 2.0,
                family=FamilyDescriptor(
                    family_dim=1 if complex_case else 3,
                    parametrization="phase-circle" if complex_case else "unit-quaternion-sphere",
                    representative=rep,
                ),
            )
        target = UnitVector.normalized(align_to(manifold, a, b))
        log = sphere_log_all(start, target)
        return GeodesicEnumeration(
            distance=log.distance,
            isolated=[GeodesicSegment(start, log.velocities[0], log.distance)],
        )

    dists, dmin, ties, _ = _lens_ties(manifold, x, y, tie_tol)
    segments = []
    for m in ties:
        target = UnitVector.normalized(deck_translate(manifold.p, m, b))
        log = sphere_log_all(start, target)
        segments.append(GeodesicSegment(start, log.velocities[0], float(dists[m])))
    return GeodesicEnumeration(distance=dmin, isolated=segments, deck_indices=ties)


def _adjacent(p: int, ties: tuple[int, ...]) -> bool:
    i, j = ties
    return (j - i) % p in (1, p - 1)


def classify_pair(
    manifold: ModelManifold,
    x: ManifoldPoint,
    y: ManifoldPoint,
    tie_tol: float = TIE_TOL,
) -> StratumLabel:
    """Classify an ordered pair into its cut-locus stratum.

    Raises:
        AmbiguousNearCut: When the decisive gap lies in (tie_tol, 10 tie_tol).
        AdjacencyViolation: When two tied lens indices are not adjacent mod p.
        LemmaViolation: When a lens tie multiplicity other than 1, 2 or p occurs.
    """
    _require(manifold, x, y)
    a, b = x.coords, y.coords

    if manifold.kind is ManifoldKind.LENS:
        p = manifold.p
        dists, dmin, ties, margin = _lens_ties(manifold, x, y, tie_tol)
        if dmin < COINCIDENT_TOL:
            return StratumLabel(StratumTag.COINCIDENT, ties, COINCIDENT_TOL - dmin)
        if len(ties) == 1:
            return StratumLabel(StratumTag.OFF_CUT, ties, margin)
        if len(ties) == 2:
            if not _adjacent(p, ties):
                raise AdjacencyViolation(f"tied deck indices {ties} are not adjacent mod {p}", ties)
            return StratumLabel(StratumTag.LENS_C1, ties, margin)
        if len(ties) == p:
            return StratumLabel(StratumTag.LENS_CP_MINUS_1, ties, margin)
        raise LemmaViolation(
            f"{len(ties)} tied deck indices on L({p};1)", [float(c) for c in b], ties
        )

    d = distance(manifold, x, y)
    if d < COINCIDENT_TOL:
        return StratumLabel(StratumTag.COINCIDENT, (), COINCIDENT_TOL - d)

    if manifold.kind is ManifoldKind.SPHERE:
        gap = 1.0 + float(np.dot(a, b))
        if gap <= ANTIPODAL_TOL:
            return StratumLabel(StratumTag.SPHERE_ANTIPODAL, (), ANTIPODAL_TOL - gap)
        if gap < AMBIGUITY_FACTOR * ANTIPODAL_TOL:
            raise _ambiguity(f"1 + <x, y> = {gap:.3e} inside the ambiguity band", gap)
        return StratumLabel(StratumTag.OFF_CUT, (), gap - ANTIPODAL_TOL)

    h_norm = float(np.linalg.norm(projective_product(manifold, a, b)))
    if h_norm <= tie_tol:
        return StratumLabel(StratumTag.PROJECTIVE_CUT, (), tie_tol - h_norm)
    if h_norm < AMBIGUITY_FACTOR * tie_tol:
        raise _ambiguity(f"|<x, y>| = {h_norm:.3e} inside the ambiguity band", h_norm)
    return StratumLabel(StratumTag.OFF_CUT, (), h_norm - tie_tol)


def check_velocity(manifold: ModelManifold, x: ManifoldPoint, v: TangentAtPoint) -> None:
    """Validate that v is a unit (horizontal) tangent at the lift of x."""
    if not np.allclose(v.base.coords, x.coords, atol=TANGENT_TOL):
        raise NonTangent("velocity is based at a different lift")
    if not v.is_unit():
        raise NonUnit(f"velocity norm {v.norm!r} is not 1")
    for e in vertical_basis(manifold, x.coords):
        inner = float(np.dot(e, v.vec))
        if abs(inner) > TANGENT_TOL:
            raise NonTangent(f"velocity has vertical component {inner!r}")


def exp_point(manifold: ModelManifold, x: ManifoldPoint, v: TangentAtPoint, t: float) -> ManifoldPoint:
    """Point reached by the geodesic from x with unit initial velocity v at time t."""
    _require(manifold, x)
    check_velocity(manifold, x, v)
    return ManifoldPoint(manifold, sphere_exp(x.lift, v, t))


def tangent_cut_time(manifold: ModelManifold, x: ManifoldPoint, v: TangentAtPoint) -> float:
    """Time after which the geodesic from x along v stops minimizing.

    Spheres cut at pi, projective spaces at pi / 2; on lens spaces the
    geodesic is cut where it first crosses a bisector of the Dirichlet domain.
    """
    _require(manifold, x)
    check_velocity(manifold, x, v)
    if manifold.kind is ManifoldKind.SPHERE:
        return math.pi
    if manifold.is_projective:
        return math.pi / 2.0
    a = x.coords
    p = manifold.p
    return min(
        hyperplane_crossing_time(x.lift, v, a - deck_translate(p, m, a)) for m in range(1, p)
    )


def random_point(manifold: ModelManifold, rng: np.random.Generator) -> ManifoldPoint:
    """Uniformly distributed point (Gaussian lift, normalized)."""
    return ManifoldPoint(manifold, UnitVector.normalized(rng.standard_normal(manifold.ambient_dim)))


def random_unit_tangent(
    manifold: ModelManifold, x: ManifoldPoint, rng: np.random.Generator
) -> TangentAtPoint:
    """Uniformly distributed unit horizontal tangent at the lift of x."""
    w = horizontal_part(manifold, x.coords, rng.standard_normal(manifold.ambient_dim))
    return TangentAtPoint(x.lift, w / np.linalg.norm(w))
