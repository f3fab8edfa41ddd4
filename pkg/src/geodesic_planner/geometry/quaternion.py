"""Hamilton product on quaternions stored as (w, x, y, z) arrays.

Arrays of shape (..., 4) are treated as stacks of quaternions. Quaternionic
vectors of length n + 1 are stored flat with 4 (n + 1) real coordinates.
"""

from __future__ import annotations

import numpy as np


def qmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Hamilton product a * b, broadcasting over leading axes."""
    aw, ax, ay, az = np.moveaxis(np.asarray(a, dtype=float), -1, 0)
    bw, bx, by, bz = np.moveaxis(np.asarray(b, dtype=float), -1, 0)
    return np.stack(
        [
            aw * bw - ax * bx - ay * by - az * bz,
            aw * bx + ax * bw + ay * bz - az * by,
            aw * by - ax * bz + ay * bw + az * bx,
            aw * bz + ax * by - ay * bx + az * bw,
        ],
        axis=-1,
    )


def qconj(a: np.ndarray) -> np.ndarray:
    """Quaternion conjugate, negating the vector part."""
    out = np.array(a, dtype=float, copy=True)
    out[..., 1:] *= -1.0
    return out


def qnorm(a: np.ndarray) -> np.ndarray:
    """Euclidean norm over the last axis."""
    return np.linalg.norm(a, axis=-1)


def as_quaternions(flat: np.ndarray) -> np.ndarray:
    """View a flat real vector of length 4k as a (k, 4) quaternion stack."""
    flat = np.asarray(flat, dtype=float)
    return flat.reshape(*flat.shape[:-1], -1, 4)


def hermitian(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Quaternionic Hermitian product sum_k conj(x_k) y_k.

    Invariant under the right scalar action up to conjugation:
    <x l, y m> = conj(l) <x, y> m.
    """
    return qmul(qconj(as_quaternions(x)), as_quaternions(y)).sum(axis=-2)


def right_multiply(flat: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Right-multiply every quaternion coordinate of a flat vector by q."""
    quats = as_quaternions(flat)
    return qmul(quats, np.asarray(q, dtype=float)).reshape(np.shape(flat))


def left_matrix(q: np.ndarray) -> np.ndarray:
    """Real 4x4 matrix of left multiplication by q."""
    w, x, y, z = np.asarray(q, dtype=float)
    return np.array(
        [
            [w, -x, -y, -z],
            [x, w, -z, y],
            [y, z, w, -x],
            [z, -y, x, w],
        ]
    )


def right_matrix(q: np.ndarray) -> np.ndarray:
    """Real 4x4 matrix of right multiplication by q."""
    w, x, y, z = np.asarray(q, dtype=float)
    return np.array(
        [
            [w, -x, -y, -z],
            [x, w, z, -y],
            [y, -z, w, x],
            [z, y, -x, w],
        ]
    )


UNIT_I = np.array([0.0, 1.0, 0.0, 0.0])
UNIT_J = np.array([0.0, 0.0, 1.0, 0.0])
UNIT_K = np.array([0.0, 0.0, 0.0, 1.0])
