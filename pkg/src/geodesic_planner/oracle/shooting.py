"""Brute-force enumeration of minimizing geodesics by tangent-sphere shooting.

Every direction of a quasi-uniform grid on the unit horizontal tangent sphere
at x is followed for the quotient distance d(x, y). Directions landing close
to y are clustered, one representative per cluster is refined with
least squares until it lands on y, and refined directions are merged.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np
from scipy.optimize import least_squares, linear_sum_assignment
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components
from scipy.spatial.distance import cdist

from ..constants import (
    CLUSTER_FACTOR,
    COINCIDENT_TOL,
    DEFAULT_GRID_SIZE,
    FAMILY_LINK_FACTOR,
    FAMILY_MIN_CHAIN,
    FAMILY_MIN_CLUSTERS,
    LAND_TOL,
    MIN_GRID_SIZE,
    ORACLE_MAX_TANGENT_DIM,
    REFINE_TOL,
    TIE_TOL,
)
from ..errors import GridTooCoarse, InvalidInputError, UnsupportedManifold
from ..geometry.models import TangentAtPoint
from ..geometry.quaternion import as_quaternions, qconj, qmul
from ..spaces.manifolds import deck_orbit, distance, minimal_geodesics, vertical_basis
from ..spaces.models import ManifoldKind, ManifoldPoint, ModelManifold, complex_coords
from .sampling import grid_spacing, tangent_sphere_grid

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class OracleCluster:
    """One refined minimizing direction and the grid directions it absorbed."""

    velocity: TangentAtPoint
    length: float
    population: int
    landing_error: float

    def to_dict(self) -> dict[str, Any]:
        return {
            "velocity": self.velocity.to_list(),
            "length": self.length,
            "population": self.population,
            "landing_error": self.landing_error,
        }


@dataclass
class OracleReport:
    """Result of brute-force shooting from x towards y."""

    manifold: ModelManifold
    x: ManifoldPoint
    y: ManifoldPoint
    distance: float
    grid_size: int
    acceptance_radius: float
    survivors: int
    clusters: list[OracleCluster] = field(default_factory=list)
    family_detected: bool = False

    def to_dict(self) -> dict[str, Any]:
        return {
            "manifold": self.manifold.spec,
            "x": self.x.to_list(),
            "y": self.y.to_list(),
            "distance": self.distance,
            "grid_size": self.grid_size,
            "acceptance_radius": self.acceptance_radius,
            "survivors": self.survivors,
            "clusters": [c.to_dict() for c in self.clusters],
            "family_detected": self.family_detected,
        }


def horizontal_basis(manifold: ModelManifold, lift: np.ndarray) -> np.ndarray:
    """Orthonormal basis of the horizontal tangent space at a lift, one vector per row."""
    projector = np.eye(lift.size) - np.outer(lift, lift)
    for e in vertical_basis(manifold, lift):
        projector -= np.outer(e, e)
    values, vectors = np.linalg.eigh(projector)
    return vectors[:, values > 0.5].T


def aligned_targets(manifold: ModelManifold, landings: np.ndarray, y: np.ndarray) -> np.ndarray:
    """For each landing point, the lift of y closest to it."""
    kind = manifold.kind
    if kind is ManifoldKind.SPHERE:
        return np.broadcast_to(y, landings.shape).copy()
    if kind is ManifoldKind.LENS:
        orbit = deck_orbit(manifold.p, y)
        nearest = np.argmax(landings @ orbit.T, axis=1)
        return orbit[nearest]
    if kind is ManifoldKind.COMPLEX_PROJECTIVE:
        zl = landings[:, 0::2] + 1j * landings[:, 1::2]
        zy = complex_coords(y)
        h = (np.conj(zl) * zy).sum(axis=1)
        phase = np.where(np.abs(h) > 0.0, np.conj(h) / np.maximum(np.abs(h), 1e-300), 1.0)
        zt = zy[None, :] * phase[:, None]
        out = np.empty_like(landings)
        out[:, 0::2] = zt.real
        out[:, 1::2] = zt.imag
        return out
    ql = as_quaternions(landings)
    qy = as_quaternions(y)
    h = qmul(qconj(ql), qy[None]).sum(axis=-2)
    norms = np.linalg.norm(h, axis=-1, keepdims=True)
    unit = np.where(norms > 0.0, qconj(h) / np.maximum(norms, 1e-300), np.array([1.0, 0.0, 0.0, 0.0]))
    return qmul(qy[None], unit[:, None, :]).reshape(landings.shape)


def _chord_angles(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return 2.0 * np.arctan2(np.linalg.norm(a - b, axis=-1), np.linalg.norm(a + b, axis=-1))


def _shoot(x: np.ndarray, basis: np.ndarray, coords: np.ndarray, length: float) -> np.ndarray:
    directions = coords @ basis
    directions /= np.linalg.norm(directions, axis=-1, keepdims=True)
    return math.cos(length) * x + math.sin(length) * directions


def _landing_errors(manifold: ModelManifold, landings: np.ndarray, y: np.ndarray) -> np.ndarray:
    return _chord_angles(landings, aligned_targets(manifold, landings, y))


def _greedy_clusters(points: np.ndarray, order: np.ndarray, radius: float) -> list[list[int]]:
    """Assign points, in the given order, to the first center within radius."""
    centers: list[np.ndarray] = []
    members: list[list[int]] = []
    for idx in order:
        pt = points[idx]
        if centers:
            dists = np.linalg.norm(np.asarray(centers) - pt, axis=1)
            nearest = int(np.argmin(dists))
            if dists[nearest] <= radius:
                members[nearest].append(int(idx))
                continue
        centers.append(pt)
        members.append([int(idx)])
    return members


def _refine(
    manifold: ModelManifold,
    x: np.ndarray,
    y: np.ndarray,
    basis: np.ndarray,
    start: np.ndarray,
    length: float,
) -> tuple[np.ndarray, float]:
    """Least-squares polish of one direction until its landing hits a lift of y."""
    landing = _shoot(x, basis, start[None, :], length)
    target = aligned_targets(manifold, landing, y)[0]
    error = float(_chord_angles(landing[0], target))
    if error <= REFINE_TOL:
        return start / np.linalg.norm(start), error

    def residual(c: np.ndarray) -> np.ndarray:
        return _shoot(x, basis, c[None, :], length)[0] - target

    result = least_squares(residual, start, xtol=1e-14, ftol=1e-14, gtol=1e-14)
    coords = result.x / np.linalg.norm(result.x)
    landing = _shoot(x, basis, coords[None, :], length)
    return coords, float(_landing_errors(manifold, landing, y)[0])


def family_threshold(cluster_radius: float) -> int:
    """Chain length above which linked clusters count as a continuous family.

    Greedy centers along a great circle of directions are at most two cluster
    radii apart, so a one-parameter family yields at least pi / radius
    clusters; the threshold is half of that, clamped to
    [FAMILY_MIN_CHAIN, FAMILY_MIN_CLUSTERS].
    """
    fewest = math.pi / cluster_radius
    return max(FAMILY_MIN_CHAIN, min(FAMILY_MIN_CLUSTERS, int(fewest // 2)))


def _family_detected(
    manifold: ModelManifold,
    x: np.ndarray,
    y: np.ndarray,
    basis: np.ndarray,
    centers: np.ndarray,
    length: float,
    link: float,
    land_tol: float,
    threshold: int,
) -> bool:
    """Whether more than threshold clusters chain into a continuum.

    Two clusters within the link distance are joined when the normalized
    midpoint of their directions also lands on y.
    """
    count = centers.shape[0]
    if count <= threshold:
        return False
    gaps = cdist(centers, centers)
    rows, cols = np.nonzero(np.triu(gaps <= link, k=1))
    if rows.size == 0:
        return False
    mids = centers[rows] + centers[cols]
    norms = np.linalg.norm(mids, axis=1)
    ok = norms > 1e-9
    rows, cols, mids = rows[ok], cols[ok], mids[ok] / norms[ok, None]
    landed = _landing_errors(manifold, _shoot(x, basis, mids, length), y) <= land_tol
    graph = coo_matrix((np.ones(int(landed.sum())), (rows[landed], cols[landed])), shape=(count, count))
    _, labels = connected_components(graph, directed=False)
    return int(np.bincount(labels).max()) > threshold


def brute_force_minimizers(
    manifold: ModelManifold,
    x: ManifoldPoint,
    y: ManifoldPoint,
    grid_size: int = DEFAULT_GRID_SIZE,
    land_tol: float = LAND_TOL,
) -> OracleReport:
    """Enumerate minimizing geodesics from x to y numerically.

    Args:
        manifold: Manifold with horizontal tangent dimension at most 4.
        x: Start point.
        y: End point.
        grid_size: Approximate number of shooting directions.
        land_tol: Landing tolerance before refinement.

    Raises:
        GridTooCoarse: When no direction lands although d(x, y) is below the diameter.
    """
    if grid_size < MIN_GRID_SIZE:
        raise InvalidInputError(f"grid_size must be at least {MIN_GRID_SIZE}, got {grid_size}")
    if land_tol <= 0.0:
        raise InvalidInputError(f"land_tol must be positive, got {land_tol!r}")
    a, b = x.coords, y.coords
    basis = horizontal_basis(manifold, a)
    k = basis.shape[0]
    if k > ORACLE_MAX_TANGENT_DIM:
        raise UnsupportedManifold(f"{manifold.display_name} has tangent dimension {k}; the oracle handles at most 4")

    d = distance(manifold, x, y)
    grid = tangent_sphere_grid(k, grid_size)
    accept = max(land_tol, 2.0 * grid_spacing(k, grid.shape[0]))
    report = OracleReport(manifold, x, y, d, int(grid.shape[0]), accept, 0)
    if d < COINCIDENT_TOL:
        return report

    errors = _landing_errors(manifold, _shoot(a, basis, grid, d), b)
    keep = np.nonzero(errors <= accept)[0]
    report.survivors = int(keep.size)
    logger.debug("%s: %d of %d directions land within %.3e", manifold.spec, keep.size, grid.shape[0], accept)
    if keep.size == 0:
        if d < manifold.diameter - COINCIDENT_TOL:
            raise GridTooCoarse(f"no direction landed within {accept:.3e} at distance {d:.6f}")
        return report

    raw_radius = max(CLUSTER_FACTOR * land_tol, 2.0 * accept)
    order = keep[np.argsort(errors[keep], kind="stable")]
    raw = _greedy_clusters(grid, order, raw_radius)

    refined: list[tuple[np.ndarray, float, int]] = []
    for members in raw:
        coords, error = _refine(manifold, a, b, basis, grid[members[0]], d)
        if error <= land_tol:
            refined.append((coords, error, len(members)))

    points = np.array([c for c, _, _ in refined]).reshape(-1, k)
    merged = _greedy_clusters(points, np.arange(len(refined)), CLUSTER_FACTOR * land_tol)
    for group in merged:
        coords, error, _ = refined[group[0]]
        population = sum(refined[i][2] for i in group)
        velocity = coords @ basis
        velocity = velocity - float(np.dot(velocity, a)) * a
        report.clusters.append(
            OracleCluster(
                velocity=TangentAtPoint(x.lift, velocity / np.linalg.norm(velocity)),
                length=d,
                population=population,
                landing_error=error,
            )
        )
    centers = np.array([points[group[0]] for group in merged]).reshape(-1, k)
    report.family_detected = _family_detected(
        manifold,
        a,
        b,
        basis,
        centers,
        d,
        FAMILY_LINK_FACTOR * raw_radius,
        land_tol,
        family_threshold(raw_radius),
    )
    logger.debug(
        "%s: %d raw clusters, %d merged, family=%s",
        manifold.spec,
        len(raw),
        len(report.clusters),
        report.family_detected,
    )
    return report


@dataclass(frozen=True)
class ComparisonResult:
    """Agreement between the oracle and the closed-form enumeration."""

    count_match: bool
    velocity_max_err: float
    oracle_count: int
    closed_form_count: int | None
    family_match: bool

    def to_dict(self) -> dict[str, Any]:
        return {
            "count_match": self.count_match,
            "velocity_max_err": self.velocity_max_err,
            "oracle_count": self.oracle_count,
            "closed_form_count": self.closed_form_count,
            "family_match": self.family_match,
        }


def compare_with_closed_form(
    manifold: ModelManifold,
    x: ManifoldPoint,
    y: ManifoldPoint,
    report: OracleReport,
    tie_tol: float = TIE_TOL,
) -> ComparisonResult:
    """Match oracle clusters to the closed-form minimizers by nearest velocity.

    For continuous families only the family flags are compared and the error
    is the largest landing error among the clusters.
    """
    closed = minimal_geodesics(manifold, x, y, tie_tol)
    oracle_count = len(report.clusters)
    family = closed.family is not None and closed.family.family_dim > 0
    if family or report.family_detected:
        family_match = family and report.family_detected
        err = max((c.landing_error for c in report.clusters), default=0.0)
        return ComparisonResult(family_match, err, oracle_count, None, family_match)

    if closed.family is not None:
        # zero-dimensional family: the two directions of S^1 at an antipode
        basis = horizontal_basis(manifold, x.coords)
        expected = np.vstack([basis[0], -basis[0]])
    else:
        expected = np.array([seg.initial_velocity.vec for seg in closed.isolated]).reshape(-1, x.coords.size)
    found = np.array([c.velocity.vec for c in report.clusters]).reshape(-1, x.coords.size)
    if expected.shape[0] != found.shape[0]:
        return ComparisonResult(False, math.inf, oracle_count, expected.shape[0], True)
    if expected.shape[0] == 0:
        return ComparisonResult(True, 0.0, 0, 0, True)
    cost = cdist(found, expected)
    rows, cols = linear_sum_assignment(cost)
    err = float(cost[rows, cols].max())
    return ComparisonResult(True, err, oracle_count, expected.shape[0], True)
