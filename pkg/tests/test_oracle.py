"""Tests for the brute-force shooting oracle."""

from __future__ import annotations

import math

import numpy as np
import pytest

from geodesic_planner.constants import CLUSTER_FACTOR, FAMILY_MIN_CHAIN, FAMILY_MIN_CLUSTERS, LAND_TOL
from geodesic_planner.errors import InvalidInputError, UnsupportedManifold
from geodesic_planner.oracle import brute_force_minimizers, compare_with_closed_form, tangent_sphere_grid
from geodesic_planner.oracle.sampling import fibonacci_sphere, grid_spacing, hopf_grid
from geodesic_planner.oracle.shooting import family_threshold, horizontal_basis
from geodesic_planner.spaces import ManifoldPoint, ModelManifold, parse_manifold
from geodesic_planner.spaces.constructors import (
    lens_circle_pair,
    projective_cut_pair,
    random_lens_c1_pair,
    random_lens_circle_pair,
)
from geodesic_planner.spaces.manifolds import random_point


def point(manifold: ModelManifold, *coords: float) -> ManifoldPoint:
    return ManifoldPoint.from_coords(manifold, list(coords))


class TestGrids:
    @pytest.mark.parametrize("dim", [2, 3, 4])
    def test_unit_rows(self, dim):
        grid = tangent_sphere_grid(dim, 2_000)
        np.testing.assert_allclose(np.linalg.norm(grid, axis=1), 1.0, atol=1e-12)

    def test_line_grid(self):
        np.testing.assert_array_equal(tangent_sphere_grid(1, 1_000), [[1.0], [-1.0]])

    def test_fibonacci_is_balanced(self):
        grid = fibonacci_sphere(4_000)
        assert abs(float(grid[:, 2].mean())) < 1e-3

    def test_hopf_grid_size(self):
        grid = hopf_grid(20_000)
        assert 0.8 * 20_000 <= grid.shape[0] <= 1.2 * 20_000

    def test_unsupported_dimension(self):
        with pytest.raises(UnsupportedManifold):
            tangent_sphere_grid(5, 1_000)

    def test_spacing_shrinks(self):
        assert grid_spacing(3, 20_000) < grid_spacing(3, 2_000)
        assert grid_spacing(1, 2) == 0.0


class TestHorizontalBasis:
    @pytest.mark.parametrize(
        "manifold, expected",
        [
            (ModelManifold.sphere(2), 2),
            (ModelManifold.complex_projective(1), 2),
            (ModelManifold.complex_projective(2), 4),
            (ModelManifold.quaternionic_projective(1), 4),
            (ModelManifold.lens(5), 3),
        ],
        ids=lambda v: v.spec if isinstance(v, ModelManifold) else str(v),
    )
    def test_dimension(self, manifold, expected, unit_vector_factory):
        lift = unit_vector_factory(manifold.ambient_dim)
        basis = horizontal_basis(manifold, lift)
        assert basis.shape == (expected, manifold.ambient_dim)
        np.testing.assert_allclose(basis @ lift, 0.0, atol=1e-12)
        np.testing.assert_allclose(basis @ basis.T, np.eye(expected), atol=1e-12)


class TestBruteForce:
    def test_cp1_off_cut(self):
        manifold = ModelManifold.complex_projective(1)
        x = point(manifold, 1.0, 0.0, 0.0, 0.0)
        y = point(manifold, 1.0, 0.0, 1.0, 0.0)
        report = brute_force_minimizers(manifold, x, y)
        assert report.distance == pytest.approx(math.pi / 4)
        assert len(report.clusters) == 1
        assert report.clusters[0].length == pytest.approx(math.pi / 4)
        assert not report.family_detected
        result = compare_with_closed_form(manifold, x, y, report)
        assert result.count_match and result.family_match
        assert result.velocity_max_err < 1e-6

    def test_lens_circle_pair(self):
        manifold = ModelManifold.lens(3)
        x, y = lens_circle_pair(3)
        report = brute_force_minimizers(manifold, x, y)
        assert len(report.clusters) == 3
        assert not report.family_detected
        result = compare_with_closed_form(manifold, x, y, report)
        assert result.count_match
        assert result.closed_form_count == 3
        assert result.velocity_max_err < 1e-6

    def test_sphere_antipodal_family(self):
        manifold = ModelManifold.sphere(2)
        x = point(manifold, 1.0, 0.0, 0.0)
        y = point(manifold, -1.0, 0.0, 0.0)
        report = brute_force_minimizers(manifold, x, y)
        assert report.family_detected
        result = compare_with_closed_form(manifold, x, y, report)
        assert result.family_match
        assert result.closed_form_count is None

    def test_cp1_cut_family(self):
        manifold = ModelManifold.complex_projective(1)
        x = point(manifold, 1.0, 0.0, 0.0, 0.0)
        y = point(manifold, 0.0, 0.0, 1.0, 0.0)
        report = brute_force_minimizers(manifold, x, y)
        assert report.distance == pytest.approx(math.pi / 2)
        assert report.family_detected
        assert compare_with_closed_form(manifold, x, y, report).family_match

    def test_circle_antipodes(self):
        manifold = ModelManifold.sphere(1)
        x = point(manifold, 1.0, 0.0)
        y = point(manifold, -1.0, 0.0)
        report = brute_force_minimizers(manifold, x, y)
        assert len(report.clusters) == 2
        result = compare_with_closed_form(manifold, x, y, report)
        assert result.count_match
        assert result.closed_form_count == 2

    def test_coincident(self):
        manifold = ModelManifold.sphere(3)
        x = point(manifold, 0.0, 0.0, 1.0, 0.0)
        report = brute_force_minimizers(manifold, x, x, grid_size=1_000)
        assert report.clusters == []
        assert compare_with_closed_form(manifold, x, x, report).count_match

    def test_deterministic(self):
        manifold = ModelManifold.lens(3)
        x = point(manifold, 1.0, 0.0, 0.0, 0.0)
        y = point(manifold, 0.3, 0.2, 0.5, 0.7)
        first = brute_force_minimizers(manifold, x, y, grid_size=5_000).to_dict()
        second = brute_force_minimizers(manifold, x, y, grid_size=5_000).to_dict()
        assert first == second

    def test_too_many_tangent_dimensions(self):
        manifold = ModelManifold.quaternionic_projective(2)
        x = point(manifold, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0)
        with pytest.raises(UnsupportedManifold):
            brute_force_minimizers(manifold, x, x)

    def test_grid_too_small(self):
        manifold = ModelManifold.sphere(2)
        x = point(manifold, 1.0, 0.0, 0.0)
        with pytest.raises(InvalidInputError):
            brute_force_minimizers(manifold, x, x, grid_size=10)

    def test_land_tol_positive(self):
        manifold = ModelManifold.sphere(2)
        x = point(manifold, 1.0, 0.0, 0.0)
        with pytest.raises(InvalidInputError):
            brute_force_minimizers(manifold, x, x, land_tol=0.0)

    def test_report_to_dict(self):
        manifold = ModelManifold.sphere(2)
        x = point(manifold, 1.0, 0.0, 0.0)
        y = point(manifold, 0.0, 1.0, 0.0)
        doc = brute_force_minimizers(manifold, x, y, grid_size=2_000).to_dict()
        assert doc["manifold"] == "s2"
        assert len(doc["clusters"]) == 1
        assert doc["family_detected"] is False

    @pytest.mark.slow
    @pytest.mark.parametrize("spec", ["s3", "cp2", "hp1", "lens5"])
    def test_random_pairs_match(self, spec, rng):
        manifold = parse_manifold(spec)
        for _ in range(5):
            x, y = random_point(manifold, rng), random_point(manifold, rng)
            report = brute_force_minimizers(manifold, x, y, grid_size=40_000)
            result = compare_with_closed_form(manifold, x, y, report)
            assert result.count_match
            assert result.velocity_max_err < 1e-6


class TestClosedFormAgreement:
    @pytest.mark.parametrize("p", [3, 4, 5, 7])
    def test_lens_adjacent_tie_pairs(self, p):
        manifold = ModelManifold.lens(p)
        rng = np.random.default_rng(p)
        for _ in range(3):
            x, y = random_lens_c1_pair(p, rng)
            report = brute_force_minimizers(manifold, x, y)
            result = compare_with_closed_form(manifold, x, y, report)
            assert not report.family_detected
            assert result.count_match
            assert result.closed_form_count == 2
            assert result.velocity_max_err < 1e-6

    @pytest.mark.parametrize("p", [4, 5, 7])
    def test_lens_circle_pairs(self, p):
        manifold = ModelManifold.lens(p)
        rng = np.random.default_rng(10 + p)
        for _ in range(2):
            x, y = random_lens_circle_pair(p, rng)
            report = brute_force_minimizers(manifold, x, y)
            result = compare_with_closed_form(manifold, x, y, report)
            assert result.count_match
            assert result.closed_form_count == p
            assert result.velocity_max_err < 1e-6

    @pytest.mark.parametrize(
        "manifold",
        [ModelManifold.complex_projective(2), ModelManifold.quaternionic_projective(1)],
        ids=["cp2", "hp1"],
    )
    def test_projective_cut_family(self, manifold):
        x, y = projective_cut_pair(manifold, np.random.default_rng(5))
        report = brute_force_minimizers(manifold, x, y)
        assert report.distance == pytest.approx(math.pi / 2)
        assert report.family_detected
        result = compare_with_closed_form(manifold, x, y, report)
        assert result.family_match
        assert result.closed_form_count is None
        raw_radius = max(CLUSTER_FACTOR * LAND_TOL, 2.0 * report.acceptance_radius)
        assert len(report.clusters) >= 2 * family_threshold(raw_radius)


class TestFamilyThreshold:
    @pytest.mark.parametrize(
        "radius, expected",
        [(0.05, FAMILY_MIN_CLUSTERS), (0.2, 7), (0.398, FAMILY_MIN_CHAIN), (2.0, FAMILY_MIN_CHAIN)],
    )
    def test_scales_with_cluster_radius(self, radius, expected):
        assert family_threshold(radius) == expected

    def test_never_exceeds_half_a_circle_of_clusters(self):
        for radius in np.linspace(0.01, 1.0, 50):
            fewest = math.pi / radius
            threshold = family_threshold(float(radius))
            assert FAMILY_MIN_CHAIN <= threshold <= FAMILY_MIN_CLUSTERS
            assert threshold <= max(FAMILY_MIN_CHAIN, fewest / 2.0)
