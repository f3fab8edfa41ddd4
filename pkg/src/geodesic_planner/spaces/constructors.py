"""Exact constructors for pairs on each cut stratum.

Random pairs hit a cut stratum with probability zero, so tests and the
planner checks build cut pairs directly from their defining equations.
"""

from __future__ import annotations

import math

import numpy as np

from ..errors import InvalidInputError, UnsupportedManifold
from ..geometry.models import UnitVector
from ..lens.domain import Q0, sigma
from .isometry import Isometry, act_isometry, random_isometry
from .manifolds import hermitian_complement, horizontal_part, random_point
from .models import ManifoldKind, ManifoldPoint, ModelManifold

Pair = tuple[ManifoldPoint, ManifoldPoint]


def transport(manifold: ModelManifold, pair: Pair, g: Isometry | None) -> Pair:
    """Move both points of a pair by the same isometry."""
    if g is None:
        return pair
    return act_isometry(manifold, g, pair[0]), act_isometry(manifold, g, pair[1])


def lens_c1_pair(
    p: int,
    a: float = 0.4,
    x: float = 0.6,
    y: float = 0.0,
    index: int = 1,
    g: Isometry | None = None,
) -> Pair:
    """Pair (q0, (a, sigma_l a, x, y)) on the disk stratum D(1)_l, l in {1, p - 1}.

    Args:
        p: Lens parameter.
        a: First coordinate, positive for points of the closed domain.
        x: Third coordinate.
        y: Fourth coordinate.
        index: Vanishing constraint, 1 or p - 1.
        g: Optional isometry applied to both points.
    """
    if index not in (1, p - 1):
        raise InvalidInputError(f"disk strata exist only for index 1 or {p - 1}, got {index}")
    if a <= 0.0:
        raise InvalidInputError(f"a must be positive, got {a!r}")
    manifold = ModelManifold.lens(p)
    s = sigma(p, index)
    pair = (
        ManifoldPoint.from_coords(manifold, Q0),
        ManifoldPoint.from_coords(manifold, [a, s * a, x, y]),
    )
    return transport(manifold, pair, g)


def lens_circle_pair(p: int, theta: float = 0.0, g: Isometry | None = None) -> Pair:
    """Pair (q0, (0, 0, cos theta, sin theta)) on the circle stratum."""
    manifold = ModelManifold.lens(p)
    pair = (
        ManifoldPoint.from_coords(manifold, Q0),
        ManifoldPoint.from_coords(manifold, [0.0, 0.0, math.cos(theta), math.sin(theta)]),
    )
    return transport(manifold, pair, g)


def random_lens_c1_pair(p: int, rng: np.random.Generator, index: int = 1) -> Pair:
    """Random D(1) pair moved by a random SU(2) element."""
    a = float(rng.uniform(0.05, 1.0))
    x, y = rng.standard_normal(2)
    return lens_c1_pair(p, a, float(x), float(y), index, random_isometry(ModelManifold.lens(p), rng))


def random_lens_circle_pair(p: int, rng: np.random.Generator) -> Pair:
    """Random circle-stratum pair moved by a random SU(2) element."""
    theta = float(rng.uniform(0.0, 2.0 * math.pi))
    return lens_circle_pair(p, theta, random_isometry(ModelManifold.lens(p), rng))


def projective_cut_pair(manifold: ModelManifold, rng: np.random.Generator) -> Pair:
    """Random pair with vanishing Hermitian product on CP^n or HP^n."""
    if not manifold.is_projective:
        raise UnsupportedManifold(f"{manifold.spec} is not projective")
    x = random_point(manifold, rng)
    w = hermitian_complement(manifold, x.coords, rng.standard_normal(manifold.ambient_dim))
    w = horizontal_part(manifold, x.coords, w)
    return x, ManifoldPoint(manifold, UnitVector.normalized(w))


def projective_cell_pair(manifold: ModelManifold, k: int, l: int, rng: np.random.Generator) -> Pair:
    """Random cut pair on CP^n or HP^n whose first nonzero coordinates are k and l.

    Both points draw Gaussian coordinates from index k (resp. l) on; the one
    with the larger cell index is then made orthogonal to the other, which
    keeps its leading zeros.

    Raises:
        InvalidInputError: When k or l is out of range, or k = l = n, where
            no orthogonal pair exists.
    """
    if not manifold.is_projective:
        raise UnsupportedManifold(f"{manifold.spec} is not projective")
    n = manifold.n
    if not (0 <= k <= n and 0 <= l <= n) or k == l == n:
        raise InvalidInputError(f"no cut pair with cell indices ({k}, {l}) on {manifold.spec}")
    block = manifold.ambient_dim // (n + 1)

    def draw(first: int) -> np.ndarray:
        coords = rng.standard_normal(manifold.ambient_dim)
        coords[: first * block] = 0.0
        return coords / np.linalg.norm(coords)

    x, y = draw(k), draw(l)
    if k >= l:
        y = hermitian_complement(manifold, x, y)
    else:
        x = hermitian_complement(manifold, y, x)
    return (
        ManifoldPoint(manifold, UnitVector.normalized(x)),
        ManifoldPoint(manifold, UnitVector.normalized(y)),
    )


def sphere_antipodal_pair(manifold: ModelManifold, rng: np.random.Generator) -> Pair:
    """Random antipodal pair on a sphere."""
    if manifold.kind is not ManifoldKind.SPHERE:
        raise UnsupportedManifold(f"{manifold.spec} is not a sphere")
    x = random_point(manifold, rng)
    return x, ManifoldPoint(manifold, UnitVector(-x.coords))


def cut_pair(manifold: ModelManifold, rng: np.random.Generator) -> Pair:
    """A random pair on the top cut stratum of any supported manifold."""
    if manifold.kind is ManifoldKind.SPHERE:
        return sphere_antipodal_pair(manifold, rng)
    if manifold.is_projective:
        return projective_cut_pair(manifold, rng)
    return random_lens_c1_pair(manifold.p, rng)
