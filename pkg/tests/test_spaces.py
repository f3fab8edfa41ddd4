"""Tests for the model manifolds, their isometries and cut strata."""

from __future__ import annotations

import math

import numpy as np
import pytest

from geodesic_planner.errors import (
    AmbiguousNearCut,
    InvalidInputError,
    ManifoldMismatch,
    ManifoldSpecError,
    NonTangent,
    NonUnit,
    NotUnitary,
    UnsupportedManifold,
)
from geodesic_planner.geometry import TangentAtPoint, UnitVector
from geodesic_planner.geometry.quaternion import right_multiply
from geodesic_planner.spaces import (
    Isometry,
    ManifoldKind,
    ManifoldPoint,
    ModelManifold,
    StratumTag,
    act_isometry,
    classify_pair,
    distance,
    exp_point,
    minimal_geodesics,
    near_identity_isometry,
    parse_manifold,
    parse_point,
    random_isometry,
    tangent_cut_time,
)
from geodesic_planner.spaces.constructors import (
    cut_pair,
    lens_c1_pair,
    lens_circle_pair,
    projective_cut_pair,
    projective_cell_pair,
    random_lens_c1_pair,
    random_lens_circle_pair,
    sphere_antipodal_pair,
)
from geodesic_planner.spaces.isometry import coordinate_torus_isometry, fiber_rotation, pole_stabilizer
from geodesic_planner.spaces.manifolds import (
    deck_translate,
    random_point,
    random_unit_tangent,
    vertical_basis,
)
from geodesic_planner.spaces.parser import parse_vector


def _lands_on(manifold: ModelManifold, segment, y: ManifoldPoint) -> float:
    end = ManifoldPoint(manifold, UnitVector.normalized(segment.end))
    return distance(manifold, end, y)


class TestParser:
    @pytest.mark.parametrize(
        "spec, kind, n",
        [
            ("s3", ManifoldKind.SPHERE, 3),
            ("CP2", ManifoldKind.COMPLEX_PROJECTIVE, 2),
            ("hp1", ManifoldKind.QUATERNIONIC_PROJECTIVE, 1),
            (" lens7 ", ManifoldKind.LENS, 7),
        ],
    )
    def test_parse_manifold(self, spec, kind, n):
        manifold = parse_manifold(spec)
        assert manifold.kind is kind
        assert manifold.n == n

    @pytest.mark.parametrize("spec", ["lens2", "s0", "rp3", "cp", "lens-3", ""])
    def test_parse_manifold_rejects(self, spec):
        with pytest.raises(ManifoldSpecError):
            parse_manifold(spec)

    def test_spec_round_trip(self):
        for spec in ("s2", "cp3", "hp2", "lens11"):
            assert parse_manifold(spec).spec == spec

    def test_parse_vector_separators(self):
        np.testing.assert_array_equal(parse_vector("1, 0  0,0"), [1.0, 0.0, 0.0, 0.0])

    def test_parse_vector_rejects_text(self):
        with pytest.raises(InvalidInputError):
            parse_vector("1,a,0")

    def test_parse_point_requires_unit_unless_normalized(self):
        lens3 = ModelManifold.lens(3)
        with pytest.raises(NonUnit):
            parse_point(lens3, "2,0,0,0")
        assert parse_point(lens3, "2,0,0,0", normalize=True).coords[0] == 1.0

    def test_parse_point_dimension(self):
        with pytest.raises(ManifoldMismatch):
            parse_point(ModelManifold.sphere(2), "1,0,0,0")


class TestModelManifold:
    @pytest.mark.parametrize(
        "manifold, ambient, dim, diameter",
        [
            (ModelManifold.sphere(4), 5, 4, math.pi),
            (ModelManifold.complex_projective(2), 6, 4, math.pi / 2),
            (ModelManifold.quaternionic_projective(1), 8, 4, math.pi / 2),
            (ModelManifold.lens(5), 4, 3, math.pi / 2),
        ],
    )
    def test_dimensions(self, manifold, ambient, dim, diameter):
        assert manifold.ambient_dim == ambient
        assert manifold.dim == dim
        assert manifold.diameter == diameter

    def test_lens_parameter(self):
        with pytest.raises(InvalidInputError):
            ModelManifold.lens(2)
        with pytest.raises(InvalidInputError):
            ModelManifold.sphere(3).p

    def test_display_names(self):
        assert ModelManifold.lens(7).display_name == "L(7;1)"
        assert ModelManifold.complex_projective(2).display_name == "CP^2"


class TestManifoldPoint:
    def test_complex_phase_is_same_point(self, rng):
        cp2 = ModelManifold.complex_projective(2)
        x = random_point(cp2, rng)
        z = (x.coords[0::2] + 1j * x.coords[1::2]) * np.exp(0.83j)
        moved = np.empty(6)
        moved[0::2], moved[1::2] = z.real, z.imag
        other = ManifoldPoint.from_coords(cp2, moved)
        assert other == x
        np.testing.assert_allclose(other.canonical_lift(), x.canonical_lift(), atol=1e-12)
        assert hash(other) == hash(x)

    def test_deck_translate_is_same_point(self, lens, rng):
        x = random_point(lens, rng)
        for m in range(1, lens.p):
            other = ManifoldPoint.from_coords(lens, deck_translate(lens.p, m, x.coords))
            assert other == x
            np.testing.assert_allclose(other.canonical_lift(), x.canonical_lift(), atol=1e-12)

    def test_quaternion_phase_is_same_point(self, rng):
        hp1 = ModelManifold.quaternionic_projective(1)
        x = random_point(hp1, rng)
        q = rng.standard_normal(4)
        other = ManifoldPoint.from_coords(hp1, right_multiply(x.coords, q / np.linalg.norm(q)))
        assert other == x
        np.testing.assert_allclose(other.canonical_lift(), x.canonical_lift(), atol=1e-12)

    def test_points_on_different_manifolds_differ(self):
        a = ManifoldPoint.from_coords(ModelManifold.lens(3), [1, 0, 0, 0])
        b = ManifoldPoint.from_coords(ModelManifold.lens(5), [1, 0, 0, 0])
        assert a != b


class TestDistance:
    def test_cp1_example(self):
        cp1 = ModelManifold.complex_projective(1)
        x = ManifoldPoint.from_coords(cp1, [1, 0, 0, 0])
        y = ManifoldPoint.from_coords(cp1, [1, 0, 1, 0])
        assert distance(cp1, x, y) == pytest.approx(math.pi / 4, abs=1e-14)

    def test_lens_circle_is_half_pi(self, lens):
        x, y = lens_circle_pair(lens.p, 0.3)
        assert distance(lens, x, y) == pytest.approx(math.pi / 2, abs=1e-12)

    def test_lift_independence(self, manifold, rng):
        for _ in range(20):
            x, y = random_point(manifold, rng), random_point(manifold, rng)
            g = random_isometry(manifold, rng)
            d = distance(manifold, x, y)
            assert distance(manifold, y, x) == pytest.approx(d, abs=1e-12)
            assert distance(manifold, act_isometry(manifold, g, x), act_isometry(manifold, g, y)) == pytest.approx(
                d, abs=1e-9
            )
            assert 0.0 <= d <= manifold.diameter + 1e-12

    def test_mismatch(self):
        x = ManifoldPoint.from_coords(ModelManifold.lens(3), [1, 0, 0, 0])
        with pytest.raises(ManifoldMismatch):
            distance(ModelManifold.lens(5), x, x)


class TestClassifyPair:
    def test_coincident(self, manifold, rng):
        x = random_point(manifold, rng)
        assert classify_pair(manifold, x, x).tag is StratumTag.COINCIDENT

    def test_generic_pairs_are_off_cut(self, manifold, rng):
        for _ in range(50):
            label = classify_pair(manifold, random_point(manifold, rng), random_point(manifold, rng))
            assert label.tag is StratumTag.OFF_CUT
            assert not label.tag.is_cut
            assert label.margin >= 0.0

    def test_lens3_c1_example(self):
        lens3 = ModelManifold.lens(3)
        x = ManifoldPoint.from_coords(lens3, [1, 0, 0, 0])
        y = ManifoldPoint.from_coords(lens3, [0.4, 0.4 * math.sqrt(3.0), 0.6, 0.0])
        label = classify_pair(lens3, x, y)
        assert label.tag is StratumTag.LENS_C1
        i, j = label.tie_indices
        assert (j - i) % 3 in (1, 2)

    def test_lens_strata(self, lens, rng):
        for _ in range(20):
            x, y = random_lens_c1_pair(lens.p, rng, index=int(rng.choice([1, lens.p - 1])))
            label = classify_pair(lens, x, y)
            assert label.tag is StratumTag.LENS_C1
            i, j = label.tie_indices
            assert (j - i) % lens.p in (1, lens.p - 1)

            x, y = random_lens_circle_pair(lens.p, rng)
            label = classify_pair(lens, x, y)
            assert label.tag is StratumTag.LENS_CP_MINUS_1
            assert label.tie_indices == tuple(range(lens.p))

    def test_lens_tie_translation(self, lens, rng):
        x, y = lens_c1_pair(lens.p, 0.5, 0.2, -0.4)
        ties = classify_pair(lens, x, y).tie_indices
        for j in range(lens.p):
            moved = ManifoldPoint(lens, UnitVector.normalized(deck_translate(lens.p, j, x.coords)))
            shifted = classify_pair(lens, moved, y).tie_indices
            assert sorted(shifted) == sorted((t + j) % lens.p for t in ties)

    def test_sphere_antipodal(self, rng):
        for n in (1, 2, 5):
            s = ModelManifold.sphere(n)
            x, y = sphere_antipodal_pair(s, rng)
            assert classify_pair(s, x, y).tag is StratumTag.SPHERE_ANTIPODAL

    def test_projective_cut(self, rng):
        for manifold in (ModelManifold.complex_projective(3), ModelManifold.quaternionic_projective(2)):
            for _ in range(20):
                x, y = projective_cut_pair(manifold, rng)
                assert distance(manifold, x, y) == pytest.approx(math.pi / 2, abs=1e-9)
                assert classify_pair(manifold, x, y).tag is StratumTag.PROJECTIVE_CUT

    def test_sphere_ambiguity_band(self):
        s2 = ModelManifold.sphere(2)
        eps = math.sqrt(1e-11)
        x = ManifoldPoint.from_coords(s2, [1, 0, 0])
        y = ManifoldPoint.from_coords(s2, [-math.cos(eps), math.sin(eps), 0])
        with pytest.raises(AmbiguousNearCut) as info:
            classify_pair(s2, x, y)
        assert 1e-12 < info.value.margin < 1e-11

    @pytest.mark.parametrize("gap, expected", [(5e-12, None), (2e-11, 1), (0.0, "family")])
    def test_sphere_band_agrees_with_enumeration(self, gap, expected):
        s2 = ModelManifold.sphere(2)
        eps = math.sqrt(2.0 * gap)
        x = ManifoldPoint.from_coords(s2, [1, 0, 0])
        y = ManifoldPoint.from_coords(s2, [-math.cos(eps), math.sin(eps), 0])
        if expected is None:
            with pytest.raises(AmbiguousNearCut):
                classify_pair(s2, x, y)
            with pytest.raises(AmbiguousNearCut):
                minimal_geodesics(s2, x, y)
            return
        label = classify_pair(s2, x, y)
        found = minimal_geodesics(s2, x, y)
        if expected == "family":
            assert label.tag is StratumTag.SPHERE_ANTIPODAL
            assert found.family is not None
        else:
            assert label.tag is StratumTag.OFF_CUT
            assert found.count == 1

    def test_projective_ambiguity_band(self):
        cp1 = ModelManifold.complex_projective(1)
        delta = 5e-9
        x = ManifoldPoint.from_coords(cp1, [1, 0, 0, 0])
        y = ManifoldPoint.from_coords(cp1, [delta, 0, math.sqrt(1 - delta**2), 0])
        with pytest.raises(AmbiguousNearCut):
            classify_pair(cp1, x, y)
        with pytest.raises(AmbiguousNearCut):
            minimal_geodesics(cp1, x, y)
        assert classify_pair(cp1, x, y, tie_tol=1e-7).tag is StratumTag.PROJECTIVE_CUT

    def test_equivariance(self, manifold, rng):
        pairs = [cut_pair(manifold, rng) for _ in range(5)]
        pairs += [(random_point(manifold, rng), random_point(manifold, rng)) for _ in range(5)]
        for x, y in pairs:
            label = classify_pair(manifold, x, y)
            for _ in range(5):
                g = random_isometry(manifold, rng)
                moved = classify_pair(manifold, act_isometry(manifold, g, x), act_isometry(manifold, g, y))
                assert moved.tag is label.tag
                assert len(moved.tie_indices) == len(label.tie_indices)


class TestMinimalGeodesics:
    def test_counts_on_lens(self, lens, rng):
        x, y = random_point(lens, rng), random_point(lens, rng)
        assert minimal_geodesics(lens, x, y).count == 1
        x, y = random_lens_c1_pair(lens.p, rng)
        found = minimal_geodesics(lens, x, y)
        assert found.count == 2
        for seg in found.isolated:
            assert _lands_on(lens, seg, y) < 1e-9
            assert seg.length == pytest.approx(distance(lens, x, y), abs=1e-9)
        x, y = random_lens_circle_pair(lens.p, rng)
        found = minimal_geodesics(lens, x, y)
        assert found.count == lens.p
        assert found.deck_indices == tuple(range(lens.p))
        for seg in found.isolated:
            assert _lands_on(lens, seg, y) < 1e-9

    def test_single_minimizer_lands(self, manifold, rng):
        for _ in range(10):
            x, y = random_point(manifold, rng), random_point(manifold, rng)
            found = minimal_geodesics(manifold, x, y)
            assert found.count == 1
            seg = found.isolated[0]
            assert _lands_on(manifold, seg, y) < 1e-9
            assert seg.length == pytest.approx(distance(manifold, x, y), abs=1e-12)

    def test_coincident_is_empty(self, manifold, rng):
        x = random_point(manifold, rng)
        found = minimal_geodesics(manifold, x, x)
        assert found.count == 0
        assert found.distance < 1e-10

    def test_families(self, rng):
        s3 = ModelManifold.sphere(3)
        found = minimal_geodesics(s3, *sphere_antipodal_pair(s3, rng))
        assert found.count is None
        assert found.family.family_dim == 2
        assert found.family.parametrization == "equatorial-sphere"

        cp2 = ModelManifold.complex_projective(2)
        x, y = projective_cut_pair(cp2, rng)
        found = minimal_geodesics(cp2, x, y)
        assert found.family.family_dim == 1
        assert found.family.parametrization == "phase-circle"
        assert _lands_on(cp2, found.family.representative, y) < 1e-9

        hp1 = ModelManifold.quaternionic_projective(1)
        x, y = projective_cut_pair(hp1, rng)
        found = minimal_geodesics(hp1, x, y)
        assert found.family.family_dim == 3
        assert found.family.parametrization == "unit-quaternion-sphere"
        assert _lands_on(hp1, found.family.representative, y) < 1e-9

    def test_to_dict(self, rng):
        lens5 = ModelManifold.lens(5)
        doc = minimal_geodesics(lens5, *lens_circle_pair(5, 1.0)).to_dict()
        assert len(doc["isolated"]) == 5
        assert doc["deck_indices"] == [0, 1, 2, 3, 4]
        assert doc["family"] is None


class TestExpAndCutTime:
    def test_exp_point_reaches_distance(self, manifold, rng):
        x = random_point(manifold, rng)
        v = random_unit_tangent(manifold, x, rng)
        y = exp_point(manifold, x, v, 0.4)
        assert distance(manifold, x, y) == pytest.approx(0.4, abs=1e-9)

    def test_vertical_velocity_rejected(self, rng):
        hp1 = ModelManifold.quaternionic_projective(1)
        x = random_point(hp1, rng)
        vertical = vertical_basis(hp1, x.coords)[0]
        with pytest.raises(NonTangent):
            exp_point(hp1, x, TangentAtPoint(x.lift, vertical), 0.1)

    def test_fixed_cut_times(self, rng):
        for manifold, expected in (
            (ModelManifold.sphere(3), math.pi),
            (ModelManifold.complex_projective(2), math.pi / 2),
            (ModelManifold.quaternionic_projective(1), math.pi / 2),
        ):
            x = random_point(manifold, rng)
            assert tangent_cut_time(manifold, x, random_unit_tangent(manifold, x, rng)) == expected

    def test_lens_deck_direction(self, lens):
        x = ManifoldPoint.from_coords(lens, [1, 0, 0, 0])
        v = TangentAtPoint(x.lift, np.array([0.0, 1.0, 0.0, 0.0]))
        assert tangent_cut_time(lens, x, v) == pytest.approx(math.pi / lens.p, abs=1e-12)

    def test_lens_orthogonal_direction(self, lens):
        x = ManifoldPoint.from_coords(lens, [1, 0, 0, 0])
        v = TangentAtPoint(x.lift, np.array([0.0, 0.0, 1.0, 0.0]))
        assert tangent_cut_time(lens, x, v) == pytest.approx(math.pi / 2, abs=1e-12)

    def test_lens_cut_time_is_where_minimality_stops(self, lens, rng):
        for _ in range(10):
            x = random_point(lens, rng)
            v = random_unit_tangent(lens, x, rng)
            t = tangent_cut_time(lens, x, v)
            assert 0.0 < t <= math.pi / 2 + 1e-12
            before = exp_point(lens, x, v, t - 1e-4)
            after = exp_point(lens, x, v, t + 1e-4)
            assert distance(lens, x, before) == pytest.approx(t - 1e-4, abs=1e-9)
            assert distance(lens, x, after) < t + 1e-4 - 1e-9


class TestIsometry:
    def test_random_isometries_validate(self, manifold, rng):
        g = random_isometry(manifold, rng)
        h = random_isometry(manifold, rng)
        np.testing.assert_allclose(g.compose(g.inverse()).matrix, np.eye(manifold.ambient_dim), atol=1e-12)
        assert g.compose(h).manifold == manifold

    def test_seed_determinism(self, manifold):
        np.testing.assert_array_equal(random_isometry(manifold, 7).matrix, random_isometry(manifold, 7).matrix)

    def test_rejects_non_orthogonal(self):
        with pytest.raises(NotUnitary):
            Isometry(ModelManifold.sphere(2), 2.0 * np.eye(3))

    def test_rejects_reflection(self):
        with pytest.raises(NotUnitary):
            Isometry(ModelManifold.sphere(2), np.diag([1.0, 1.0, -1.0]))

    def test_lens_needs_special_unitary(self):
        with pytest.raises(NotUnitary):
            # diag(1, -1) is unitary with determinant -1
            Isometry(ModelManifold.lens(3), np.diag([1.0, 1.0, -1.0, -1.0]))
        with pytest.raises(NotUnitary):
            # conjugating z2 is not complex linear
            Isometry(ModelManifold.lens(3), np.diag([1.0, 1.0, 1.0, -1.0]))

    def test_rejects_wrong_size(self):
        with pytest.raises(ManifoldMismatch):
            Isometry(ModelManifold.lens(3), np.eye(3))

    def test_near_identity_moves_little(self, manifold, rng):
        g = near_identity_isometry(manifold, 1e-3, rng)
        for _ in range(10):
            x = random_point(manifold, rng)
            assert distance(manifold, x, act_isometry(manifold, g, x)) <= 1e-3

    def test_near_identity_radius(self, rng):
        with pytest.raises(InvalidInputError):
            near_identity_isometry(ModelManifold.sphere(2), 0.0, rng)

    @pytest.mark.parametrize(
        "manifold",
        [ModelManifold.complex_projective(2), ModelManifold.quaternionic_projective(2), ModelManifold.lens(5)],
        ids=["cp2", "hp2", "lens5"],
    )
    def test_coordinate_torus_keeps_zero_coordinates(self, manifold, rng):
        g = coordinate_torus_isometry(manifold, 1e-3, rng)
        block = manifold.ambient_dim // 2 if manifold.kind is ManifoldKind.LENS else manifold.ambient_dim // 3
        lift = rng.standard_normal(manifold.ambient_dim)
        lift[:block] = 0.0
        lift /= np.linalg.norm(lift)
        moved = g.matrix @ lift
        np.testing.assert_array_equal(moved[:block], 0.0)
        assert np.linalg.norm(moved - lift) <= 1e-3 / math.sqrt(2.0) + 1e-15

    def test_coordinate_torus_needs_homogeneous_coordinates(self, rng):
        with pytest.raises(UnsupportedManifold):
            coordinate_torus_isometry(ModelManifold.sphere(3), 1e-3, rng)

    def test_pole_stabilizer_fixes_e0(self, rng):
        manifold = ModelManifold.sphere(4)
        g = pole_stabilizer(manifold, 1e-3, rng)
        np.testing.assert_allclose(g.matrix[:, 0], np.eye(5)[0], atol=1e-15)
        lift = random_point(manifold, rng).coords
        assert np.linalg.norm(g.matrix @ lift - lift) <= 1e-3 / math.sqrt(2.0) + 1e-15
        with pytest.raises(UnsupportedManifold):
            pole_stabilizer(ModelManifold.sphere(1), 1e-3, rng)

    def test_fiber_rotation_commutes_with_deck(self, rng):
        rot = fiber_rotation(ModelManifold.lens(7), 0.4)
        lift = random_point(ModelManifold.lens(7), rng).coords
        for m in range(7):
            np.testing.assert_allclose(rot @ deck_translate(7, m, lift), deck_translate(7, m, rot @ lift), atol=1e-14)
        with pytest.raises(UnsupportedManifold):
            fiber_rotation(ModelManifold.complex_projective(1), 0.4)


class TestConstructors:
    def test_c1_index(self):
        with pytest.raises(InvalidInputError):
            lens_c1_pair(5, index=2)
        with pytest.raises(InvalidInputError):
            lens_c1_pair(5, a=0.0)

    def test_c1_other_disk(self, lens):
        x, y = lens_c1_pair(lens.p, index=lens.p - 1)
        tag = classify_pair(lens, x, y).tag
        assert tag is StratumTag.LENS_C1
        assert tag.is_cut

    def test_unsupported(self, rng):
        with pytest.raises(UnsupportedManifold):
            projective_cut_pair(ModelManifold.sphere(2), rng)
        with pytest.raises(UnsupportedManifold):
            sphere_antipodal_pair(ModelManifold.lens(3), rng)

    def test_transport_keeps_distance(self, lens, rng):
        g = random_isometry(lens, rng)
        x, y = lens_c1_pair(lens.p)
        gx, gy = lens_c1_pair(lens.p, g=g)
        assert distance(lens, gx, gy) == pytest.approx(distance(lens, x, y), abs=1e-12)

    @pytest.mark.parametrize(
        "manifold",
        [ModelManifold.complex_projective(3), ModelManifold.quaternionic_projective(2)],
        ids=["cp3", "hp2"],
    )
    def test_cell_pair_indices(self, manifold, rng):
        block = manifold.ambient_dim // (manifold.n + 1)
        for k in range(manifold.n + 1):
            for l in range(manifold.n + 1):
                if k == l == manifold.n:
                    with pytest.raises(InvalidInputError):
                        projective_cell_pair(manifold, k, l, rng)
                    continue
                x, y = projective_cell_pair(manifold, k, l, rng)
                assert classify_pair(manifold, x, y).tag is StratumTag.PROJECTIVE_CUT
                assert np.all(x.coords[: k * block] == 0.0)
                assert np.linalg.norm(x.coords[k * block : (k + 1) * block]) > 1e-6
                assert np.all(y.coords[: l * block] == 0.0)
                assert np.linalg.norm(y.coords[l * block : (l + 1) * block]) > 1e-6
