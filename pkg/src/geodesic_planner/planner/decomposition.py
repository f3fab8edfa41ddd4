"""Constructive fibered decompositions of M x M.

Every decomposition starts with the off-cut piece, where the unique
minimizing geodesic is continuous in the endpoints. The cut locus is then
split into pieces carrying explicit continuous sections:

- Odd spheres: one antipodal piece using the complex structure field J(x).
- Even spheres: antipodal pairs away from e0 using a field singular only at
  e0, plus the single pair (e0, -e0).
- CP^n, HP^n: one piece per sum k + l of cell indices, k and l being the
  first nonzero homogeneous coordinates of x and y.
- L(p;1): one piece for the adjacent-tie stratum and four pieces over the
  circle stratum, using right-invariant frame fields of S^3.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from ..constants import AMBIGUITY_FACTOR, CELL_ZERO_TOL, COINCIDENT_TOL, TIE_TOL
from ..errors import AmbiguousNearCut
from ..geometry.models import GeodesicSegment, TangentAtPoint, UnitVector
from ..geometry.quaternion import UNIT_I, UNIT_J, as_quaternions, right_multiply
from ..spaces.isometry import coordinate_torus_isometry, fiber_rotation, pole_stabilizer
from ..spaces.manifolds import (
    classify_pair,
    deck_translate,
    hermitian_complement,
    horizontal_part,
    minimal_geodesics,
)
from ..spaces.models import (
    ManifoldKind,
    ManifoldPoint,
    ModelManifold,
    StratumTag,
    complex_coords,
    first_nonzero_index,
    real_coords,
)
from .models import Decomposition, Ledger, Membership, Motion, Piece

logger = logging.getLogger(__name__)


def _zero_segment(start: UnitVector) -> GeodesicSegment:
    return GeodesicSegment(start, TangentAtPoint(start, np.zeros(start.dim)), 0.0)


def _tangent_segment(start: UnitVector, direction: np.ndarray, length: float) -> GeodesicSegment:
    w = direction - float(np.dot(direction, start.coords)) * start.coords
    return GeodesicSegment(start, TangentAtPoint(start, w / np.linalg.norm(w)), length)


def _tag_is(manifold: ModelManifold, tie_tol: float, *tags: StratumTag) -> Membership:
    def membership(x: ManifoldPoint, y: ManifoldPoint) -> bool:
        return classify_pair(manifold, x, y, tie_tol).tag in tags

    return membership


def _off_cut_piece(manifold: ModelManifold, tie_tol: float) -> Piece:
    def section(x: ManifoldPoint, y: ManifoldPoint) -> GeodesicSegment:
        found = minimal_geodesics(manifold, x, y, tie_tol)
        if not found.isolated:
            return _zero_segment(x.lift)
        return found.isolated[0]

    return Piece(
        id=0,
        description="off-cut pairs, unique minimizing geodesic",
        membership=_tag_is(manifold, tie_tol, StratumTag.COINCIDENT, StratumTag.OFF_CUT),
        section=section,
    )


# =============================================================================
# Spheres
# =============================================================================


def complex_structure_field(x: np.ndarray) -> np.ndarray:
    """J(x) = (-x1, x0, -x3, x2, ...), a unit tangent field on odd spheres."""
    out = np.empty_like(x)
    out[0::2] = -x[1::2]
    out[1::2] = x[0::2]
    return out


def pole_field(x: np.ndarray) -> np.ndarray:
    """Unit tangent field on S^n minus e0, obtained by transporting e1.

    V(x) = e1 - 2 <x, e1> (x - e0) / |x - e0|^2, which vanishes nowhere
    except in the limit x -> e0.
    """
    e0 = np.zeros_like(x)
    e0[0] = 1.0
    e1 = np.zeros_like(x)
    e1[1] = 1.0
    diff = x - e0
    v = e1 - 2.0 * float(np.dot(x, e1)) * diff / float(np.dot(diff, diff))
    v = v - float(np.dot(v, x)) * x
    return v / np.linalg.norm(v)


def _sphere_pieces(manifold: ModelManifold, tie_tol: float) -> tuple[list[Piece], Ledger]:
    antipodal = _tag_is(manifold, tie_tol, StratumTag.SPHERE_ANTIPODAL)
    n = manifold.n
    if n % 2 == 1:
        piece = Piece(
            id=1,
            description="antipodal pairs, velocity J(x)",
            membership=antipodal,
            section=lambda x, y: _tangent_segment(x.lift, complex_structure_field(x.coords), math.pi),
        )
        return [piece], Ledger(2, 2, f"GC(S^{n}) = TC(S^{n}) = 2 for odd n")

    def at_pole(x: ManifoldPoint) -> bool:
        return float(np.linalg.norm(x.coords - np.eye(x.lift.dim)[0])) < COINCIDENT_TOL

    away = Piece(
        id=1,
        description="antipodal pairs with x != e0, velocity from the pole field",
        membership=lambda x, y: antipodal(x, y) and not at_pole(x),
        section=lambda x, y: _tangent_segment(x.lift, pole_field(x.coords), math.pi),
    )
    pole = Piece(
        id=2,
        description="the single pair (e0, -e0), velocity e1",
        membership=lambda x, y: antipodal(x, y) and at_pole(x),
        section=lambda x, y: _tangent_segment(x.lift, np.eye(x.lift.dim)[1], math.pi),
        motion=lambda radius, rng: pole_stabilizer(manifold, radius, rng).matrix,
    )
    return [away, pole], Ledger(3, 3, f"GC(S^{n}) = TC(S^{n}) = 3 for even n")


# =============================================================================
# Projective spaces
# =============================================================================


def cell_index(manifold: ModelManifold, x: ManifoldPoint) -> int:
    """Index of the first nonzero homogeneous coordinate."""
    if manifold.kind is ManifoldKind.COMPLEX_PROJECTIVE:
        return first_nonzero_index(complex_coords(x.coords), CELL_ZERO_TOL)
    return first_nonzero_index(as_quaternions(x.coords), CELL_ZERO_TOL)


def _projective_pieces(manifold: ModelManifold, tie_tol: float) -> tuple[list[Piece], Ledger]:
    cut = _tag_is(manifold, tie_tol, StratumTag.PROJECTIVE_CUT)
    n = manifold.n

    def section(x: ManifoldPoint, y: ManifoldPoint) -> GeodesicSegment:
        start = UnitVector(x.canonical_lift())
        target = y.canonical_lift()
        w = hermitian_complement(manifold, start.coords, target)
        w = horizontal_part(manifold, start.coords, w)
        return GeodesicSegment(start, TangentAtPoint(start, w / np.linalg.norm(w)), math.pi / 2.0)

    def make(m: int) -> Piece:
        return Piece(
            id=m + 1,
            description=f"cut pairs with cell indices k + l = {m}",
            membership=lambda x, y: cut(x, y) and cell_index(manifold, x) + cell_index(manifold, y) == m,
            section=section,
            motion=lambda radius, rng: coordinate_torus_isometry(manifold, radius, rng).matrix,
        )

    pieces = [make(m) for m in range(2 * n + 1)]
    ledger = Ledger(
        constructed_count=2 * n + 2,
        reference_bound=2 * n + 1,
        note=(
            f"cell construction gives {2 * n + 2} pieces; the known bound {2 * n + 1} "
            "comes from a category estimate without an explicit section"
        ),
    )
    return pieces, ledger


# =============================================================================
# Lens spaces
# =============================================================================


def adjacent_choice(p: int, ties: tuple[int, ...]) -> int:
    """From an adjacent tied pair {m, m + 1}, return m."""
    i, j = ties
    return i if (i + 1) % p == j else j


def _lens_c1_piece(manifold: ModelManifold, tie_tol: float) -> Piece:
    p = manifold.p

    def section(x: ManifoldPoint, y: ManifoldPoint) -> GeodesicSegment:
        found = minimal_geodesics(manifold, x, y, tie_tol)
        m = adjacent_choice(p, found.deck_indices)
        return found.isolated[found.deck_indices.index(m)]

    return Piece(
        id=1,
        description="adjacent deck ties {m, m + 1}, geodesic to Psi_m y",
        membership=_tag_is(manifold, tie_tol, StratumTag.LENS_C1),
        section=section,
    )


def _complex_projection(x: np.ndarray, e: np.ndarray) -> np.ndarray:
    """Component of e in the complex line orthogonal to x."""
    zx = complex_coords(x)
    ze = complex_coords(e)
    return real_coords(ze - np.vdot(zx, ze) * zx)


@dataclass(frozen=True)
class CircleSelection:
    """Reference frame and chosen candidate for a circle-stratum pair.

    Attributes:
        frame: 1 when the E1 projection is used, 2 for the E2 fallback.
        offset: Angle of the chosen candidate from the reference, in [0, 2 pi / p).
        deck_index: m with velocity Psi_m y.
    """

    frame: int
    offset: float
    deck_index: int

    @property
    def aligned(self) -> bool:
        return self.offset == 0.0


def circle_selection(p: int, x: np.ndarray, y: np.ndarray, tie_tol: float = TIE_TOL) -> CircleSelection:
    """Pick the candidate velocity with the smallest nonnegative angle from the reference.

    Candidates are the p translates Psi_m y, which lie on the unit circle of the
    complex line P orthogonal to x. The reference direction is the
    projection onto P of the frame field x i, or of x j where that vanishes.

    Raises:
        AmbiguousNearCut: When the E1 projection or the angular offset sits in
            its ambiguity band.
    """
    e1 = _complex_projection(x, right_multiply(x, UNIT_I))
    norm1 = float(np.linalg.norm(e1))
    if tie_tol < norm1 < AMBIGUITY_FACTOR * tie_tol:
        raise AmbiguousNearCut(f"frame projection {norm1:.3e} inside the ambiguity band", norm1)
    if norm1 > tie_tol:
        frame, ref = 1, e1 / norm1
    else:
        e2 = _complex_projection(x, right_multiply(x, UNIT_J))
        frame, ref = 2, e2 / np.linalg.norm(e2)

    iref = real_coords(1j * complex_coords(ref))
    wedge = 2.0 * math.pi / p
    theta = math.atan2(float(np.dot(y, iref)), float(np.dot(y, ref))) % (2.0 * math.pi)
    m = (-math.floor(theta / wedge)) % p
    offset = theta - math.floor(theta / wedge) * wedge
    gap = min(offset, wedge - offset)
    if tie_tol < gap < AMBIGUITY_FACTOR * tie_tol:
        raise AmbiguousNearCut(f"angular offset {gap:.3e} inside the ambiguity band", gap)
    if offset <= tie_tol:
        offset = 0.0
    elif wedge - offset <= tie_tol:
        offset = 0.0
        m = (m - 1) % p
    return CircleSelection(frame=frame, offset=offset, deck_index=m)


def _lens_circle_pieces(manifold: ModelManifold, tie_tol: float) -> list[Piece]:
    p = manifold.p
    on_circle = _tag_is(manifold, tie_tol, StratumTag.LENS_CP_MINUS_1)

    def section(x: ManifoldPoint, y: ManifoldPoint) -> GeodesicSegment:
        choice = circle_selection(p, x.coords, y.coords, tie_tol)
        target = deck_translate(p, choice.deck_index, y.coords)
        w = _complex_projection(x.coords, target)
        return _tangent_segment(x.lift, w, math.pi / 2.0)

    def circle_motion(frame: int, aligned: bool) -> Motion:
        # the torus keeps E1 offsets but turns the E2 offset by twice its angle
        def motion(radius: float, rng: np.random.Generator) -> np.ndarray:
            step = radius / math.sqrt(2.0)
            if frame == 2 and aligned:
                return fiber_rotation(manifold, float(rng.uniform(-step, step)))
            fiber = fiber_rotation(manifold, float(rng.uniform(-step, step)) / 2.0)
            return fiber @ coordinate_torus_isometry(manifold, radius / 2.0, rng).matrix

        return motion

    def make(piece_id: int, frame: int, aligned: bool) -> Piece:
        def membership(x: ManifoldPoint, y: ManifoldPoint) -> bool:
            if not on_circle(x, y):
                return False
            choice = circle_selection(p, x.coords, y.coords, tie_tol)
            return choice.frame == frame and choice.aligned == aligned

        where = "offset 0" if aligned else f"offset in (0, 2pi/{p})"
        return Piece(
            id=piece_id,
            description=f"circle stratum, reference E{frame}, {where}",
            membership=membership,
            section=section,
            motion=circle_motion(frame, aligned),
        )

    return [
        make(2, 1, False),
        make(3, 1, True),
        make(4, 2, False),
        make(5, 2, True),
    ]


def _lens_pieces(manifold: ModelManifold, tie_tol: float) -> tuple[list[Piece], Ledger]:
    pieces = [_lens_c1_piece(manifold, tie_tol), *_lens_circle_pieces(manifold, tie_tol)]
    ledger = Ledger(
        constructed_count=1 + len(pieces),
        reference_bound=7,
        note=(
            "one adjacent-tie piece and four frame-reference pieces over the circle stratum; "
            "continuity of the circle sections is checked numerically, not proved"
        ),
    )
    return pieces, ledger


def build_decomposition(manifold: ModelManifold, tie_tol: float = TIE_TOL) -> Decomposition:
    """Construct the explicit decomposition of M x M for a supported manifold."""
    if manifold.kind is ManifoldKind.SPHERE:
        cut_pieces, ledger = _sphere_pieces(manifold, tie_tol)
    elif manifold.is_projective:
        cut_pieces, ledger = _projective_pieces(manifold, tie_tol)
    else:
        cut_pieces, ledger = _lens_pieces(manifold, tie_tol)
    pieces = (_off_cut_piece(manifold, tie_tol), *cut_pieces)
    logger.debug(
        "decomposition of %s: %d pieces (reference bound %d)",
        manifold.display_name,
        len(pieces),
        ledger.reference_bound,
    )
    return Decomposition(manifold=manifold, pieces=pieces, ledger=ledger)
