"""Closed-set catalog: exact projector values, metric invariants, normals.

Grid-oracle expectations below were computed by hand (or against
scipy.optimize.nnls for cones) before the implementations were tested.
"""

import math

import numpy as np
import pytest
from scipy.optimize import nnls

import projlab as P

RNG_SEED = 777


def _catalog(dim=2):
    """Representative instances of every catalog set in R^2."""
    return [
        P.Halfspace(np.array([1.0, 0.0]), 1.0),
        P.Hyperplane(np.array([0.0, 1.0]), 2.0),
        P.AffineSubspaceSet(np.zeros(2), np.array([[1.0, 0.0]])),
        P.Ball(np.array([0.5, -0.5]), 1.5),
        P.Sphere(np.array([0.0, 0.0]), 2.0),
        P.Box(np.array([0.0, -1.0]), np.array([1.0, 1.0])),
        P.Orthant((1, -1)),
        P.PolyhedralCone(np.array([[1.0, 0.0], [1.0, 1.0]])),
        P.Enlargement(P.Box(np.array([0.0, 0.0]), np.array([1.0, 0.0])), 0.5),
        P.UnionOfSets(
            (
                P.Ball(np.array([-2.0, 0.0]), 0.5),
                P.Ball(np.array([2.0, 0.0]), 0.5),
            )
        ),
        P.FinitePointSet(np.array([[0.0, 0.0], [2.0, 0.0], [0.0, 3.0]])),
        P.Translate(P.Orthant((1, 1)), np.array([1.0, 1.0])),
    ]


@pytest.fixture(params=range(12), ids=lambda i: type(_catalog()[i]).__name__)
def catalog_set(request):
    return _catalog()[request.param]


# ---------------------------------------------------------------------------
# Generic metric invariants across the whole catalog
# ---------------------------------------------------------------------------


class TestProjectionInvariants:
    def test_canonical_is_member(self, catalog_set):
        rng = np.random.default_rng(RNG_SEED)
        for x in rng.normal(scale=3.0, size=(200, 2)):
            r = P.project(catalog_set, x)
            assert P.membership(catalog_set, r.canonical, tol=1e-9)

    def test_distance_matches_canonical_gap(self, catalog_set):
        rng = np.random.default_rng(RNG_SEED + 1)
        for x in rng.normal(scale=3.0, size=(200, 2)):
            r = P.project(catalog_set, x)
            assert np.linalg.norm(x - r.canonical) == pytest.approx(
                r.distance, abs=1e-12
            )
            assert P.distance(catalog_set, x) == pytest.approx(
                r.distance, abs=1e-12
            )

    def test_idempotence(self, catalog_set):
        rng = np.random.default_rng(RNG_SEED + 2)
        for x in rng.normal(scale=3.0, size=(200, 2)):
            p = P.project(catalog_set, x).canonical
            p2 = P.project(catalog_set, p).canonical
            assert np.linalg.norm(p2 - p) <= 1e-12

    def test_optimality_against_sampled_members(self, catalog_set):
        """No sampled member of the set may be closer than the projection."""
        rng = np.random.default_rng(RNG_SEED + 3)
        members = np.array(
            [
                P.project(catalog_set, y).canonical
                for y in rng.normal(scale=4.0, size=(200, 2))
            ]
        )
        for x in rng.normal(scale=3.0, size=(100, 2)):
            d = P.project(catalog_set, x).distance
            best = np.min(np.linalg.norm(members - x, axis=1))
            assert d <= best + 1e-9

    def test_nonexpansive_distance_map(self, catalog_set):
        """|d(x) - d(y)| <= ||x - y|| (1-Lipschitz distance function)."""
        rng = np.random.default_rng(RNG_SEED + 4)
        xs = rng.normal(scale=3.0, size=(100, 2))
        ys = rng.normal(scale=3.0, size=(100, 2))
        for x, y in zip(xs, ys):
            dx = P.distance(catalog_set, x)
            dy = P.distance(catalog_set, y)
            assert abs(dx - dy) <= np.linalg.norm(x - y) + 1e-12


# ---------------------------------------------------------------------------
# Frozen projector values
# ---------------------------------------------------------------------------


class TestFrozenProjections:
    def test_halfspace(self):
        s = P.Halfspace(np.array([1.0, 0.0]), 1.0)
        r = P.project(s, np.array([2.0, 3.0]))
        assert np.allclose(r.canonical, [1.0, 3.0], atol=1e-15)
        assert r.distance == pytest.approx(1.0, abs=1e-15)
        # interior point is fixed
        r = P.project(s, np.array([0.2, -9.0]))
        assert np.allclose(r.canonical, [0.2, -9.0], atol=1e-15)
        assert r.distance == 0.0

    def test_hyperplane(self):
        s = P.Hyperplane(np.array([0.0, 1.0]), 2.0)
        r = P.project(s, np.array([5.0, 7.0]))
        assert np.allclose(r.canonical, [5.0, 2.0], atol=1e-15)
        assert r.distance == pytest.approx(5.0, abs=1e-15)

    def test_affine_subspace(self):
        s = P.AffineSubspaceSet(np.zeros(3), np.array([[1.0, 0.0, 0.0]]))
        r = P.project(s, np.array([1.0, 2.0, 3.0]))
        assert np.allclose(r.canonical, [1.0, 0.0, 0.0], atol=1e-15)
        assert r.distance == pytest.approx(math.sqrt(13.0), rel=1e-15)

    def test_ball_and_sphere(self):
        b = P.Ball(np.zeros(2), 1.0)
        r = P.project(b, np.array([3.0, 4.0]))
        assert np.allclose(r.canonical, [0.6, 0.8], atol=1e-15)
        assert r.distance == pytest.approx(4.0, abs=1e-14)
        # interior of the ball is fixed, but not for the sphere
        assert P.project(b, np.array([0.1, 0.0])).distance == 0.0
        s = P.Sphere(np.zeros(2), 2.0)
        r = P.project(s, np.array([3.0, 4.0]))
        assert np.allclose(r.canonical, [1.2, 1.6], atol=1e-14)
        assert r.distance == pytest.approx(3.0, abs=1e-14)
        r = P.project(s, np.array([0.1, 0.0]))
        assert np.allclose(r.canonical, [2.0, 0.0], atol=1e-14)
        assert r.distance == pytest.approx(1.9, abs=1e-14)

    def test_sphere_center_is_multivalued(self):
        s = P.Sphere(np.zeros(2), 2.0)
        r = P.project(s, np.zeros(2))
        assert r.multivalued
        assert r.distance == pytest.approx(2.0, abs=1e-15)
        assert np.linalg.norm(r.canonical) == pytest.approx(2.0, abs=1e-14)

    def test_box(self):
        s = P.Box(np.array([0.0, 0.0]), np.array([1.0, 1.0]))
        r = P.project(s, np.array([2.0, -1.0]))
        assert np.allclose(r.canonical, [1.0, 0.0], atol=1e-15)
        assert r.distance == pytest.approx(math.sqrt(2.0), rel=1e-15)

    def test_orthant(self):
        s = P.Orthant((1, -1))
        r = P.project(s, np.array([-1.0, 1.0]))
        assert np.allclose(r.canonical, [0.0, 0.0], atol=1e-15)
        assert r.distance == pytest.approx(math.sqrt(2.0), rel=1e-15)
        r = P.project(s, np.array([2.0, 1.0]))
        assert np.allclose(r.canonical, [2.0, 0.0], atol=1e-15)

    def test_polyhedral_cone_frozen(self):
        s = P.PolyhedralCone(np.array([[1.0, 0.0], [1.0, 1.0]]))
        r = P.project(s, np.array([0.0, 1.0]))
        assert np.allclose(r.canonical, [0.5, 0.5], atol=1e-12)
        assert r.distance == pytest.approx(math.sqrt(0.5), rel=1e-12)
        # inside the cone: fixed
        r = P.project(s, np.array([2.0, 1.0]))
        assert np.allclose(r.canonical, [2.0, 1.0], atol=1e-12)

    def test_polyhedral_cone_against_nnls(self):
        """Cone projection equals the nonnegative least-squares solution
        min ||G^T c - x|| over c >= 0 (independent scipy oracle)."""
        rng = np.random.default_rng(99)
        gens = rng.normal(size=(6, 4))
        s = P.PolyhedralCone(gens)
        for x in rng.normal(scale=2.0, size=(50, 4)):
            r = P.project(s, x)
            _, resid = nnls(gens.T, x)
            assert r.distance == pytest.approx(resid, abs=1e-7)

    def test_enlargement_distance_law(self):
        inner = P.Box(np.array([0.0, 0.0]), np.array([1.0, 0.0]))
        tau = 0.5
        s = P.Enlargement(inner, tau)
        rng = np.random.default_rng(5)
        for x in rng.normal(scale=3.0, size=(500, 2)):
            want = max(0.0, P.distance(inner, x) - tau)
            assert P.distance(s, x) == pytest.approx(want, abs=1e-12)

    def test_union(self):
        u = P.UnionOfSets(
            (
                P.FinitePointSet(np.array([[0.0, 0.0]])),
                P.FinitePointSet(np.array([[3.0, 0.0]])),
            )
        )
        r = P.project(u, np.array([1.0, 0.0]))
        assert np.allclose(r.canonical, [0.0, 0.0], atol=1e-15)
        r = P.project(u, np.array([1.5, 0.0]))
        assert r.multivalued
        assert len(r.minimizers) == 2

    def test_finite_points(self):
        s = P.FinitePointSet(np.array([[0.0, 0.0], [2.0, 0.0]]))
        r = P.project(s, np.array([0.9, 5.0]))
        assert np.allclose(r.canonical, [0.0, 0.0], atol=1e-15)
        r = P.project(s, np.array([1.0, 3.0]))
        assert r.multivalued
        assert len(r.minimizers) == 2

    def test_translate_shift_identity(self):
        inner = P.Ball(np.zeros(2), 1.0)
        shift = np.array([5.0, 0.0])
        s = P.Translate(inner, shift)
        rng = np.random.default_rng(6)
        for x in rng.normal(scale=3.0, size=(100, 2)):
            r = P.project(s, x)
            want = P.project(inner, x - shift).canonical + shift
            assert np.allclose(r.canonical, want, atol=1e-12)


# ---------------------------------------------------------------------------
# Proximal normals
# ---------------------------------------------------------------------------


class TestProximalNormals:
    @pytest.mark.parametrize(
        "s, p",
        [
            (P.Halfspace(np.array([1.0, 0.0]), 1.0), np.array([1.0, 3.0])),
            (P.Ball(np.zeros(2), 1.0), np.array([0.0, 1.0])),
            (P.Sphere(np.zeros(2), 1.0), np.array([0.0, 1.0])),
            (
                P.Box(np.array([0.0, 0.0]), np.array([1.0, 1.0])),
                np.array([1.0, 1.0]),
            ),
            (P.Orthant((1, 1)), np.array([0.0, 0.0])),
        ],
        ids=["halfspace", "ball", "sphere", "box-corner", "orthant-origin"],
    )
    def test_normals_project_back(self, s, p):
        """Stepping along a proximal normal and projecting returns its base."""
        normals = P.proximal_normals(s, p)
        assert normals
        for n in normals:
            assert np.linalg.norm(n.direction) == pytest.approx(1.0, abs=1e-12)
            for t in (1e-6, 1e-3):
                back = P.project(s, n.base + t * n.direction).canonical
                assert np.linalg.norm(back - n.base) <= 10.0 * t * 1e-3 + 1e-12

    def test_interior_point_has_no_normals(self):
        s = P.Ball(np.zeros(2), 1.0)
        assert P.proximal_normals(s, np.array([0.1, 0.0])) == []


# ---------------------------------------------------------------------------
# Obtuse-cone classification
# ---------------------------------------------------------------------------


class TestObtuseCone:
    def test_orthant_is_obtuse(self):
        out = P.is_obtuse_cone(P.Orthant((1, 1)))
        assert out["obtuse"]
        assert out["violations"] == 0

    def test_halfplane_cone_is_obtuse(self):
        halfplane = P.PolyhedralCone(
            np.array([[1.0, 0.0], [-1.0, 0.0], [0.0, -1.0]])
        )
        out = P.is_obtuse_cone(halfplane)
        assert out["obtuse"]
        assert out["violations"] == 0

    def test_translated_orthant_unwraps(self):
        out = P.is_obtuse_cone(
            P.Translate(P.Orthant((1, 1)), np.array([2.0, -1.0]))
        )
        assert out["obtuse"]

    def test_ray_is_not_obtuse(self):
        out = P.is_obtuse_cone(P.PolyhedralCone(np.array([[1.0, 0.0]])))
        assert not out["obtuse"]
        assert out["violations"] > 0


# ---------------------------------------------------------------------------
# Membership and config round-trip
# ---------------------------------------------------------------------------


class TestMembershipAndConfig:
    def test_membership_examples(self):
        assert P.membership(P.Ball(np.zeros(2), 1.0), np.array([0.5, 0.0]))
        assert not P.membership(P.Ball(np.zeros(2), 1.0), np.array([2.0, 0.0]))
        assert P.membership(P.Sphere(np.zeros(2), 1.0), np.array([0.0, 1.0]))
        assert not P.membership(
            P.Sphere(np.zeros(2), 1.0), np.array([0.0, 0.5])
        )

    def test_set_config_round_trip(self, catalog_set):
        cfg = catalog_set.to_config()
        rebuilt = P.set_from_config(cfg)
        rng = np.random.default_rng(11)
        for x in rng.normal(scale=3.0, size=(50, 2)):
            a = P.project(catalog_set, x)
            b = P.project(rebuilt, x)
            assert np.allclose(a.canonical, b.canonical, atol=1e-14)
            assert a.distance == pytest.approx(b.distance, abs=1e-14)
