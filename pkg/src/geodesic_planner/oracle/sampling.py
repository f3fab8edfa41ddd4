"""Deterministic quasi-uniform grids on low-dimensional unit spheres."""

from __future__ import annotations

import math

import numpy as np

from ..constants import ORACLE_MAX_TANGENT_DIM
from ..errors import UnsupportedManifold

GOLDEN_ANGLE = math.pi * (3.0 - math.sqrt(5.0))

# Volumes of S^1, S^2 and S^3 keyed by ambient dimension
_SPHERE_AREA = {2: 2.0 * math.pi, 3: 4.0 * math.pi, 4: 2.0 * math.pi**2}


def circle_grid(count: int) -> np.ndarray:
    theta = (np.arange(count) + 0.5) * (2.0 * math.pi / count)
    return np.column_stack([np.cos(theta), np.sin(theta)])


def fibonacci_sphere(count: int) -> np.ndarray:
    """Golden-angle spiral on S^2 with equal-area latitude bands."""
    i = np.arange(count)
    z = 1.0 - (2.0 * i + 1.0) / count
    r = np.sqrt(1.0 - z * z)
    phi = i * GOLDEN_ANGLE
    return np.column_stack([r * np.cos(phi), r * np.sin(phi), z])


def hopf_grid(count: int) -> np.ndarray:
    """Grid on S^3 from the Hopf coordinates (cos eta e^{i a}, sin eta e^{i b}).

    Levels of eta are equal-volume (sin^2 eta uniform); each level carries
    circles whose point counts follow the radii cos eta and sin eta.
    """
    levels = max(2, round(count ** (1.0 / 3.0)))
    u = (np.arange(levels) + 0.5) / levels
    eta = np.arcsin(np.sqrt(u))
    weight = float(np.sum(np.cos(eta) * np.sin(eta)))
    scale = math.sqrt(count / weight)
    blocks = []
    for e in eta:
        n1 = max(1, round(scale * math.cos(e)))
        n2 = max(1, round(scale * math.sin(e)))
        a = (np.arange(n1) + 0.5) * (2.0 * math.pi / n1)
        b = (np.arange(n2) + 0.5) * (2.0 * math.pi / n2)
        aa, bb = np.meshgrid(a, b, indexing="ij")
        aa, bb = aa.ravel(), bb.ravel()
        blocks.append(
            np.column_stack(
                [
                    math.cos(e) * np.cos(aa),
                    math.cos(e) * np.sin(aa),
                    math.sin(e) * np.cos(bb),
                    math.sin(e) * np.sin(bb),
                ]
            )
        )
    return np.vstack(blocks)


def tangent_sphere_grid(dim: int, count: int) -> np.ndarray:
    """About count unit vectors of R^dim, quasi-uniform on S^{dim-1}."""
    if dim == 1:
        return np.array([[1.0], [-1.0]])
    if dim == 2:
        return circle_grid(count)
    if dim == 3:
        return fibonacci_sphere(count)
    if dim == ORACLE_MAX_TANGENT_DIM:
        return hopf_grid(count)
    raise UnsupportedManifold(f"no tangent grid for dimension {dim}")


def grid_spacing(dim: int, count: int) -> float:
    """Typical distance between neighbouring grid directions."""
    if dim == 1:
        return 0.0
    return (_SPHERE_AREA[dim] / count) ** (1.0 / (dim - 1))
