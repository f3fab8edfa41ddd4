"""Shared fixtures for the geodesic planner tests."""

from __future__ import annotations

import numpy as np
import pytest

from geodesic_planner.constants import DEFAULT_SEED
from geodesic_planner.spaces import ModelManifold

LENS_PS = (3, 4, 5, 7)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(DEFAULT_SEED)


@pytest.fixture(params=LENS_PS, ids=lambda p: f"lens{p}")
def lens(request: pytest.FixtureRequest) -> ModelManifold:
    return ModelManifold.lens(request.param)


@pytest.fixture(
    params=[
        ModelManifold.sphere(2),
        ModelManifold.sphere(3),
        ModelManifold.sphere(4),
        ModelManifold.complex_projective(1),
        ModelManifold.complex_projective(2),
        ModelManifold.quaternionic_projective(1),
        ModelManifold.quaternionic_projective(2),
        ModelManifold.lens(3),
        ModelManifold.lens(5),
    ],
    ids=lambda m: m.spec,
)
def manifold(request: pytest.FixtureRequest) -> ModelManifold:
    return request.param


@pytest.fixture
def unit_vector_factory(rng: np.random.Generator):
    """Build random unit vectors of a given dimension."""

    def factory(dim: int) -> np.ndarray:
        v = rng.standard_normal(dim)
        return v / np.linalg.norm(v)

    return factory
