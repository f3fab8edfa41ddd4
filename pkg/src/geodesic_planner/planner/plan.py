"""Motion planning through a decomposition, plus numerical continuity checks."""

from __future__ import annotations

import logging
from typing import Sequence

import numpy as np

from ..constants import (
    CONTINUITY_FLOOR,
    CONTINUITY_GAIN,
    CONTINUITY_RADII,
    CONTINUITY_SAMPLES,
    CONTINUITY_SLACK,
    PATH_SAMPLES,
    TIE_TOL,
)
from ..errors import AmbiguousNearCut, InvalidInputError, ManifoldMismatch
from ..geometry.models import TangentAtPoint, UnitVector
from ..spaces.isometry import act_isometry, near_identity_isometry
from ..spaces.manifolds import classify_pair, exp_point, random_unit_tangent
from ..spaces.models import ManifoldPoint, ModelManifold
from .decomposition import build_decomposition
from .models import ContinuitySweep, Decomposition, MotionPlan, Piece, ProbeReport

logger = logging.getLogger(__name__)


def plan(
    manifold: ModelManifold,
    x: ManifoldPoint,
    y: ManifoldPoint,
    samples: int = PATH_SAMPLES,
    tie_tol: float = TIE_TOL,
    decomposition: Decomposition | None = None,
) -> MotionPlan:
    """Plan a minimizing geodesic from x to y.

    Args:
        manifold: Manifold carrying both points.
        x: Start point.
        y: End point.
        samples: Number of path samples, endpoints included.
        tie_tol: Tie tolerance for the stratum classification.
        decomposition: Prebuilt decomposition; built on demand when omitted.

    Returns:
        MotionPlan with the piece id, the section's segment and its samples.

    Raises:
        AmbiguousNearCut: When the pair is inside an ambiguity band.
        NoPiece: When the partition invariant fails.
    """
    if decomposition is None:
        decomposition = build_decomposition(manifold, tie_tol)
    elif decomposition.manifold != manifold:
        raise ManifoldMismatch(f"decomposition is for {decomposition.manifold.spec}, not {manifold.spec}")
    stratum = classify_pair(manifold, x, y, tie_tol)
    piece = decomposition.locate(x, y)
    segment = piece.section(x, y)
    points = [ManifoldPoint(manifold, UnitVector.normalized(row)) for row in segment.samples(samples)]
    logger.debug("planned %s pair in piece %d, length %.6f", stratum.tag.value, piece.id, segment.length)
    return MotionPlan(
        manifold=manifold,
        x=x,
        y=y,
        stratum=stratum,
        piece_id=piece.id,
        segment=segment,
        samples=points,
    )


def velocity_of(motion: MotionPlan) -> TangentAtPoint:
    """Initial velocity scaled by the length of the planned geodesic."""
    return motion.segment.initial_velocity.scaled(motion.segment.length)


def _perturb(
    manifold: ModelManifold,
    piece: Piece,
    x: ManifoldPoint,
    y: ManifoldPoint,
    radius: float,
    generic: bool,
    rng: np.random.Generator,
) -> tuple[ManifoldPoint, ManifoldPoint]:
    """Pair within product distance radius of (x, y).

    Generic perturbations move each point along a random geodesic. The
    other kind moves both points by the piece's own motion, or by one
    near-identity isometry when the piece has none, and so stays on the
    piece.
    """
    step = radius / np.sqrt(2.0)
    if generic:
        moved = []
        for pt in (x, y):
            t = float(rng.uniform(0.0, step))
            moved.append(exp_point(manifold, pt, random_unit_tangent(manifold, pt, rng), t))
        return moved[0], moved[1]
    if piece.motion is None:
        g = near_identity_isometry(manifold, radius, rng)
        return act_isometry(manifold, g, x), act_isometry(manifold, g, y)
    mat = piece.motion(radius, rng)
    return (
        ManifoldPoint(manifold, UnitVector.normalized(mat @ x.coords)),
        ManifoldPoint(manifold, UnitVector.normalized(mat @ y.coords)),
    )


def continuity_probe(
    manifold: ModelManifold,
    decomposition: Decomposition,
    piece_id: int,
    center: tuple[ManifoldPoint, ManifoldPoint],
    radius: float,
    n_samples: int = CONTINUITY_SAMPLES,
    seed: int | np.random.Generator = 0,
) -> ProbeReport:
    """Measure how far the section's velocity moves under small perturbations.

    Half of the samples are generic perturbations, which almost surely leave
    a cut piece; the other half move the pair along the piece. Perturbed
    pairs that leave the piece are counted as escaped. When every sample
    escapes the report carries no deviation and is inconclusive.
    """
    if radius < 0.0:
        raise InvalidInputError(f"radius must be nonnegative, got {radius!r}")
    if n_samples < 1:
        raise InvalidInputError(f"n_samples must be at least 1, got {n_samples}")
    if not 0 <= piece_id < len(decomposition.pieces):
        raise InvalidInputError(f"piece {piece_id} does not exist")
    piece = decomposition.pieces[piece_id]
    x, y = center
    if not piece.accepts(x, y):
        raise InvalidInputError(f"center pair is not in piece {piece_id}")
    base = velocity_of_section(piece, x, y)
    if radius == 0.0:
        return ProbeReport(piece_id, radius, n_samples, 0.0, 0)

    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    worst: float | None = None
    escaped = 0
    for i in range(n_samples):
        xs, ys = _perturb(manifold, piece, x, y, radius, generic=i % 2 == 0, rng=rng)
        try:
            inside = piece.accepts(xs, ys)
        except AmbiguousNearCut:
            inside = False
        if not inside:
            escaped += 1
            continue
        deviation = float(np.linalg.norm(velocity_of_section(piece, xs, ys) - base))
        worst = deviation if worst is None else max(worst, deviation)
    if worst is None:
        logger.warning("piece %d radius %.1e: all %d perturbed pairs escaped", piece_id, radius, n_samples)
    else:
        logger.debug("piece %d radius %.1e: deviation %.3e, escaped %d", piece_id, radius, worst, escaped)
    return ProbeReport(piece_id, radius, n_samples, worst, escaped)


def continuity_sweep(
    manifold: ModelManifold,
    decomposition: Decomposition,
    piece_id: int,
    center: tuple[ManifoldPoint, ManifoldPoint],
    radii: Sequence[float] = CONTINUITY_RADII,
    n_samples: int = CONTINUITY_SAMPLES,
    seed: int = 0,
) -> ContinuitySweep:
    """Run continuity_probe at each radius with the same seed.

    A shared seed draws the same directions at every radius, so the
    perturbations are rescaled copies and a continuous section shows a
    deviation growing at most linearly.
    """
    ordered = sorted(float(r) for r in radii)
    if not ordered or ordered[0] <= 0.0:
        raise InvalidInputError(f"radii must be positive, got {list(radii)!r}")
    reports = tuple(
        continuity_probe(manifold, decomposition, piece_id, center, r, n_samples, seed=seed) for r in ordered
    )
    return ContinuitySweep(
        piece_id=piece_id,
        reports=reports,
        gain=CONTINUITY_GAIN,
        slack=CONTINUITY_SLACK,
        floor=CONTINUITY_FLOOR,
    )


def velocity_of_section(piece: Piece, x: ManifoldPoint, y: ManifoldPoint) -> np.ndarray:
    """Length-scaled initial velocity of a piece's section as an ambient vector."""
    segment = piece.section(x, y)
    return segment.initial_velocity.vec * segment.length
