"""Isometries of the model manifolds as real matrices on the ambient lift space.

- S^n: SO(n + 1).
- CP^n: U(n + 1), realified on interleaved (re, im) coordinates.
- HP^n: Sp(n + 1), quaternion matrices acting on the left.
- L(p;1): SU(2) acting on C^2; it commutes with every deck transformation.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm
from scipy.stats import special_ortho_group, unitary_group

from ..constants import UNITARY_TOL
from ..errors import InvalidInputError, ManifoldMismatch, NotUnitary, UnsupportedManifold
from ..geometry.models import UnitVector
from ..geometry.quaternion import UNIT_I, UNIT_J, UNIT_K, left_matrix, qconj, qmul, right_matrix
from .models import ManifoldKind, ManifoldPoint, ModelManifold

logger = logging.getLogger(__name__)

_J_BLOCK = np.array([[0.0, -1.0], [1.0, 0.0]])


def realify(u: np.ndarray) -> np.ndarray:
    """Real matrix of a complex matrix acting on interleaved (re, im) coordinates."""
    return np.kron(u.real, np.eye(2)) + np.kron(u.imag, _J_BLOCK)


def realify_quaternionic(a: np.ndarray) -> np.ndarray:
    """Real matrix of a (k, k, 4) quaternion matrix acting on the left."""
    k = a.shape[0]
    out = np.zeros((4 * k, 4 * k))
    for i in range(k):
        for j in range(k):
            out[4 * i : 4 * i + 4, 4 * j : 4 * j + 4] = left_matrix(a[i, j])
    return out


def _complex_structure(blocks: int) -> np.ndarray:
    return np.kron(np.eye(blocks), _J_BLOCK)


def _right_structures(blocks: int) -> list[np.ndarray]:
    return [np.kron(np.eye(blocks), right_matrix(q)) for q in (UNIT_I, UNIT_J, UNIT_K)]


def _complexify_2x2(matrix: np.ndarray) -> np.ndarray:
    """Recover the complex 2x2 matrix from its realification."""
    return matrix[0::2, 0::2] + 1j * matrix[1::2, 0::2]


@dataclass(frozen=True, eq=False)
class Isometry:
    """An isometry of a model manifold, validated on construction.

    Attributes:
        manifold: The manifold it acts on.
        matrix: Real orthogonal matrix on the ambient lift space.
    """

    manifold: ModelManifold
    matrix: np.ndarray

    def __post_init__(self) -> None:
        mat = np.array(self.matrix, dtype=float)
        size = self.manifold.ambient_dim
        if mat.shape != (size, size):
            raise ManifoldMismatch(f"{self.manifold.spec} needs a {size}x{size} matrix, got {mat.shape}")
        if not np.allclose(mat.T @ mat, np.eye(size), atol=UNITARY_TOL):
            raise NotUnitary("matrix is not orthogonal")
        kind = self.manifold.kind
        if kind is ManifoldKind.SPHERE:
            if np.linalg.det(mat) < 0.0:
                raise NotUnitary("matrix reverses orientation")
        elif kind is ManifoldKind.QUATERNIONIC_PROJECTIVE:
            for r in _right_structures(self.manifold.n + 1):
                if not np.allclose(mat @ r, r @ mat, atol=UNITARY_TOL):
                    raise NotUnitary("matrix does not commute with the right quaternion action")
        else:
            j = _complex_structure(size // 2)
            if not np.allclose(mat @ j, j @ mat, atol=UNITARY_TOL):
                raise NotUnitary("matrix is not complex linear")
            if kind is ManifoldKind.LENS:
                det = complex(np.linalg.det(_complexify_2x2(mat)))
                if abs(det - 1.0) > UNITARY_TOL:
                    raise NotUnitary(f"complex determinant {det!r} is not 1")
        mat.setflags(write=False)
        object.__setattr__(self, "matrix", mat)

    def compose(self, other: Isometry) -> Isometry:
        if other.manifold != self.manifold:
            raise ManifoldMismatch("isometries act on different manifolds")
        return Isometry(self.manifold, self.matrix @ other.matrix)

    def inverse(self) -> Isometry:
        return Isometry(self.manifold, self.matrix.T)


def act_isometry(manifold: ModelManifold, g: Isometry, x: ManifoldPoint) -> ManifoldPoint:
    """Image of x under g, computed on the lift."""
    if g.manifold != manifold or x.manifold != manifold:
        raise ManifoldMismatch(f"isometry or point is not on {manifold.spec}")
    return ManifoldPoint(manifold, UnitVector.normalized(g.matrix @ x.coords))


def _rng(seed: int | np.random.Generator) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def _random_symplectic(k: int, rng: np.random.Generator) -> np.ndarray:
    """Gram-Schmidt on the columns of a Gaussian quaternion matrix."""
    a = rng.standard_normal((k, k, 4))
    cols: list[np.ndarray] = []
    for j in range(k):
        col = a[:, j, :].copy()
        for prev in cols:
            # col <- col - prev <prev, col>
            coeff = qmul(qconj(prev), col).sum(axis=0)
            col = col - qmul(prev, coeff)
        col = col / np.linalg.norm(col)
        cols.append(col)
    return np.stack(cols, axis=1)


def random_isometry(manifold: ModelManifold, seed: int | np.random.Generator) -> Isometry:
    """Haar-random isometry of the manifold from an explicit seed."""
    rng = _rng(seed)
    kind = manifold.kind
    if kind is ManifoldKind.SPHERE:
        mat = special_ortho_group.rvs(manifold.n + 1, random_state=rng)
    elif kind is ManifoldKind.COMPLEX_PROJECTIVE:
        mat = realify(unitary_group.rvs(manifold.n + 1, random_state=rng))
    elif kind is ManifoldKind.LENS:
        u = unitary_group.rvs(2, random_state=rng)
        u = u / np.sqrt(np.linalg.det(u))
        mat = realify(u)
    else:
        mat = realify_quaternionic(_random_symplectic(manifold.n + 1, rng))
    return Isometry(manifold, mat)


def _random_generator(manifold: ModelManifold, rng: np.random.Generator) -> np.ndarray:
    """Random element of the Lie algebra of the isometry group, realified."""
    kind = manifold.kind
    if kind is ManifoldKind.SPHERE:
        a = rng.standard_normal((manifold.n + 1, manifold.n + 1))
        return a - a.T
    if kind is ManifoldKind.QUATERNIONIC_PROJECTIVE:
        k = manifold.n + 1
        b = rng.standard_normal((k, k, 4))
        star = qconj(np.transpose(b, (1, 0, 2)))
        return realify_quaternionic(b - star)
    k = 2 if kind is ManifoldKind.LENS else manifold.n + 1
    b = rng.standard_normal((k, k)) + 1j * rng.standard_normal((k, k))
    g = b - b.conj().T
    if kind is ManifoldKind.LENS:
        g = g - np.trace(g) / 2.0 * np.eye(2)
    return realify(g)


def near_identity_isometry(
    manifold: ModelManifold, radius: float, rng: np.random.Generator
) -> Isometry:
    """Random isometry moving every point by less than radius.

    Built as expm(s G) with G a unit-norm skew generator, so the ambient
    displacement of any unit lift is at most s.
    """
    if radius <= 0.0:
        raise InvalidInputError(f"radius must be positive, got {radius!r}")
    g = _random_generator(manifold, rng)
    g = g / np.linalg.norm(g, 2)
    scale = radius / math.sqrt(2.0)
    return Isometry(manifold, expm(scale * g))


def _angle_bound(radius: float) -> float:
    if radius <= 0.0:
        raise InvalidInputError(f"radius must be positive, got {radius!r}")
    return radius / math.sqrt(2.0)


def coordinate_torus_isometry(
    manifold: ModelManifold, radius: float, rng: np.random.Generator
) -> Isometry:
    """Random diagonal isometry moving every lift by at most radius / sqrt(2).

    Diagonal matrices keep every vanishing homogeneous coordinate at zero, so
    cell indices survive. On a lens space the diagonal is diag(e^{i phi},
    e^{-i phi}), right multiplication by a unit complex number.
    """
    bound = _angle_bound(radius)
    kind = manifold.kind
    if kind is ManifoldKind.SPHERE:
        raise UnsupportedManifold(f"{manifold.spec} has no coordinate torus")
    if kind is ManifoldKind.LENS:
        phi = float(rng.uniform(-bound, bound))
        return Isometry(manifold, realify(np.diag([np.exp(1j * phi), np.exp(-1j * phi)])))
    k = manifold.n + 1
    angles = rng.uniform(-bound, bound, size=k)
    if kind is ManifoldKind.COMPLEX_PROJECTIVE:
        return Isometry(manifold, realify(np.diag(np.exp(1j * angles))))
    axes = rng.standard_normal((k, 3))
    axes /= np.linalg.norm(axes, axis=1, keepdims=True)
    diag = np.zeros((k, k, 4))
    for i in range(k):
        diag[i, i, 0] = math.cos(angles[i])
        diag[i, i, 1:] = math.sin(angles[i]) * axes[i]
    return Isometry(manifold, realify_quaternionic(diag))


def pole_stabilizer(manifold: ModelManifold, radius: float, rng: np.random.Generator) -> Isometry:
    """Random rotation of S^n fixing e0 and moving every lift by at most radius / sqrt(2)."""
    if manifold.kind is not ManifoldKind.SPHERE or manifold.n < 2:
        raise UnsupportedManifold(f"{manifold.spec} has no nontrivial stabilizer of e0")
    a = rng.standard_normal((manifold.n, manifold.n))
    gen = np.zeros((manifold.n + 1, manifold.n + 1))
    gen[1:, 1:] = a - a.T
    gen /= np.linalg.norm(gen, 2)
    return Isometry(manifold, expm(_angle_bound(radius) * gen))


def fiber_rotation(manifold: ModelManifold, angle: float) -> np.ndarray:
    """Multiplication of a lens lift by the complex scalar e^{i angle}.

    It commutes with the deck group and maps every circle-stratum piece into
    itself, but has complex determinant e^{2i angle}, so it is returned as a
    bare matrix rather than an Isometry.
    """
    if manifold.kind is not ManifoldKind.LENS:
        raise UnsupportedManifold(f"{manifold.spec} is not a lens space")
    return realify(np.exp(1j * angle) * np.eye(2))
