"""Operator algebra: relaxation identities, compositions, inclusions."""

import numpy as np
import pytest

import projlab as P
from projlab import ConfigError, DomainError


def _convex_sets():
    return [
        P.Halfspace(np.array([1.0, 0.0]), 1.0),
        P.Ball(np.array([0.5, -0.5]), 1.5),
        P.Box(np.array([0.0, -1.0]), np.array([1.0, 1.0])),
        P.Hyperplane(np.array([0.0, 1.0]), 2.0),
        P.AffineSubspaceSet(np.zeros(2), np.array([[1.0, 0.0]])),
    ]


class TestRelaxedProjector:
    @pytest.mark.parametrize("lam", [0.5, 1.0, 1.5, 2.0])
    def test_relaxation_identity(self, lam):
        rng = np.random.default_rng(31)
        for s in _convex_sets():
            op = P.RelaxedProjector(s, lam)
            for x in rng.normal(scale=3.0, size=(100, 2)):
                p = P.project(s, x).canonical
                want = (1.0 - lam) * x + lam * p
                assert np.linalg.norm(op.apply(x) - want) <= 1e-14

    def test_lambda_one_is_projector(self):
        s = P.Ball(np.zeros(2), 1.0)
        op = P.RelaxedProjector(s, 1.0)
        x = np.array([3.0, 4.0])
        assert np.allclose(op.apply(x), [0.6, 0.8], atol=1e-15)

    def test_reflect_identity(self):
        rng = np.random.default_rng(32)
        for s in _convex_sets():
            for x in rng.normal(scale=3.0, size=(50, 2)):
                p = P.project(s, x).canonical
                assert np.linalg.norm(P.reflect(s, x) - (2.0 * p - x)) <= 1e-14

    @pytest.mark.parametrize("lam", [0.0, -1.0, 2.0001])
    def test_lambda_domain(self, lam):
        with pytest.raises(DomainError):
            P.RelaxedProjector(P.Ball(np.zeros(2), 1.0), lam)

    def test_replay_is_bit_exact(self):
        s = P.Sphere(np.zeros(2), 2.0)
        op = P.RelaxedProjector(s, 1.5)
        x = np.array([0.3, -0.7])
        a = op.apply(x)
        b = op.apply(x)
        assert np.array_equal(a, b)

    @pytest.mark.parametrize("lam", [1.0, 1.5, 2.0])
    def test_overrelaxed_obtuse_cone_inclusion(self, lam):
        """Up-to-reflection relaxations of an obtuse cone land in the cone."""
        rng = np.random.default_rng(33)
        for cone in (
            P.Orthant((1, 1)),
            P.Translate(P.Orthant((1, 1)), np.array([2.0, -1.0])),
        ):
            op = P.RelaxedProjector(cone, lam)
            for x in rng.normal(scale=3.0, size=(200, 2)):
                assert P.membership(cone, op.apply(x), tol=1e-9)


class TestSemiIntrepidProjector:
    def test_alpha_zero_is_projector(self):
        s = P.Ball(np.zeros(2), 1.0)
        op = P.SemiIntrepidProjector(s, 0.0, 5.0)
        rng = np.random.default_rng(41)
        for x in rng.normal(scale=3.0, size=(100, 2)):
            p = P.project(s, x).canonical
            assert np.linalg.norm(op.apply(x) - p) <= 1e-14

    def test_tau_zero_is_projector(self):
        s = P.Box(np.array([0.0, 0.0]), np.array([1.0, 1.0]))
        op = P.SemiIntrepidProjector(s, 0.7, 0.0)
        rng = np.random.default_rng(42)
        for x in rng.normal(scale=3.0, size=(100, 2)):
            p = P.project(s, x).canonical
            assert np.linalg.norm(op.apply(x) - p) <= 1e-14

    def test_overshoot_formula(self):
        """T(x) = p + min(alpha, tau/||p-x||) (p - x)."""
        s = P.Hyperplane(np.array([0.0, 1.0]), 0.0)
        op = P.SemiIntrepidProjector(s, 0.5, 0.3)
        # far point: overshoot capped at tau
        x = np.array([1.0, 2.0])
        out = op.apply(x)
        assert np.allclose(out, [1.0, -0.3], atol=1e-14)
        # near point: overshoot alpha * gap
        x = np.array([1.0, 0.4])
        out = op.apply(x)
        assert np.allclose(out, [1.0, -0.2], atol=1e-14)

    def test_fixed_on_members(self):
        s = P.Ball(np.zeros(2), 1.0)
        op = P.SemiIntrepidProjector(s, 0.9, 1.0)
        x = np.array([0.3, 0.2])
        assert np.allclose(op.apply(x), x, atol=1e-14)

    def test_effective_relaxation(self):
        x = np.array([1.0, 2.0])
        p = np.array([1.0, 0.0])
        lam = P.semi_intrepid_effective_relaxation(x, p, 0.5, 0.3)
        assert lam == pytest.approx(1.0 + 0.3 / 2.0, rel=1e-15)
        lam = P.semi_intrepid_effective_relaxation(x, p, 0.05, 0.3)
        assert lam == pytest.approx(1.05, rel=1e-15)
        assert P.semi_intrepid_effective_relaxation(p, p, 0.5, 0.3) == 1.0

    def test_inclusion_for_enlargement(self):
        """For a tau-enlarged set the semi-intrepid step with matching tau
        lands inside the set (the inward segment stays within the set)."""
        disk = P.Enlargement(P.FinitePointSet(np.zeros((1, 2))), 1.0)
        op = P.SemiIntrepidProjector(disk, 0.8, 1.0)
        rng = np.random.default_rng(43)
        for x in rng.normal(scale=4.0, size=(300, 2)):
            assert P.membership(disk, op.apply(x), tol=1e-9)

    def test_parameter_domains(self):
        s = P.Ball(np.zeros(2), 1.0)
        with pytest.raises(DomainError):
            P.SemiIntrepidProjector(s, -0.1, 1.0)
        with pytest.raises(DomainError):
            P.SemiIntrepidProjector(s, 1.1, 1.0)
        with pytest.raises(DomainError):
            P.SemiIntrepidProjector(s, 0.5, -1.0)


class TestGeneralizedDR:
    def test_alpha_one_unit_relaxations_is_composition(self):
        a = P.Hyperplane(np.array([0.0, 1.0]), 0.0)
        b = P.Ball(np.array([0.0, 2.0]), 1.0)
        op = P.GeneralizedDR(a, b, 1.0, 1.0, 1.0)
        rng = np.random.default_rng(51)
        for x in rng.normal(scale=3.0, size=(100, 2)):
            pa = P.project(a, x).canonical
            want = P.project(b, pa).canonical
            assert np.linalg.norm(op.apply(x) - want) <= 1e-14

    def test_blend_of_double_reflection(self):
        a = P.Hyperplane(np.array([0.0, 1.0]), 0.0)
        b = P.Hyperplane(np.array([1.0, 0.0]), 0.0)
        op = P.GeneralizedDR(a, b, 2.0, 2.0, 0.5)
        rng = np.random.default_rng(52)
        for x in rng.normal(scale=3.0, size=(100, 2)):
            want = 0.5 * x + 0.5 * P.reflect(b, P.reflect(a, x))
            assert np.linalg.norm(op.apply(x) - want) <= 1e-14

    def test_apply_with_trace(self):
        a = P.Hyperplane(np.array([0.0, 1.0]), 0.0)
        b = P.Hyperplane(np.array([1.0, 0.0]), 0.0)
        op = P.GeneralizedDR(a, b, 1.5, 0.5, 0.25)
        x = np.array([2.0, 4.0])
        r, s, out = op.apply_with_trace(x)
        pa = P.project(a, x).canonical
        assert np.allclose(r, x + 1.5 * (pa - x), atol=1e-15)
        pb = P.project(b, r).canonical
        assert np.allclose(s, r + 0.5 * (pb - r), atol=1e-15)
        assert np.allclose(out, 0.75 * x + 0.25 * s, atol=1e-15)
        assert np.allclose(op.apply(x), out, atol=1e-15)

    def test_parameter_domains(self):
        a = P.Hyperplane(np.array([0.0, 1.0]), 0.0)
        b = P.Hyperplane(np.array([1.0, 0.0]), 0.0)
        with pytest.raises(DomainError):
            P.GeneralizedDR(a, b, 0.0, 1.0, 0.5)
        with pytest.raises(DomainError):
            P.GeneralizedDR(a, b, 1.0, 2.5, 0.5)
        with pytest.raises(DomainError):
            P.GeneralizedDR(a, b, 1.0, 1.0, 0.0)
        c = P.Hyperplane(np.array([1.0, 0.0, 0.0]), 0.0)
        with pytest.raises(DomainError):
            P.GeneralizedDR(a, c, 1.0, 1.0, 0.5)

    def test_fixed_point_on_intersection(self):
        a = P.Hyperplane(np.array([0.0, 1.0]), 0.0)
        b = P.Hyperplane(np.array([1.0, 0.0]), 0.0)
        op = P.GeneralizedDR(a, b, 2.0, 2.0, 0.5)
        x = np.zeros(2)
        assert np.allclose(op.apply(x), x, atol=1e-15)


class TestCyclicTuple:
    def test_applies_in_order(self):
        a = P.Hyperplane(np.array([0.0, 1.0]), 0.0)  # x-axis
        b = P.Hyperplane(np.array([1.0, -1.0]), 0.0)  # diagonal y = x
        ops = (P.RelaxedProjector(a, 1.0), P.RelaxedProjector(b, 1.0))
        cyc = P.CyclicTuple(ops)
        x = np.array([1.0, 2.0])
        manual = ops[1].apply(ops[0].apply(x))
        assert np.allclose(cyc.apply(x), manual, atol=1e-15)
        assert len(cyc) == 2
        # order matters for these two sets
        other = P.CyclicTuple((ops[1], ops[0])).apply(x)
        assert np.linalg.norm(other - manual) > 1e-3

    def test_rejects_empty_and_nested(self):
        with pytest.raises(DomainError):
            P.CyclicTuple(())
        inner = P.CyclicTuple(
            (P.RelaxedProjector(P.Ball(np.zeros(2), 1.0), 1.0),)
        )
        with pytest.raises(DomainError):
            P.CyclicTuple((inner,))

    def test_apply_free_function(self):
        s = P.Ball(np.zeros(2), 1.0)
        op = P.RelaxedProjector(s, 1.0)
        x = np.array([3.0, 4.0])
        assert np.array_equal(P.apply(op, x), op.apply(x))


class TestOperatorConfig:
    def test_round_trip(self):
        sets = [
            P.Hyperplane(np.array([0.0, 1.0]), 0.0),
            P.Ball(np.zeros(2), 1.0),
        ]
        ops = [
            P.RelaxedProjector(sets[0], 1.5),
            P.SemiIntrepidProjector(sets[1], 0.5, 0.3),
            P.GeneralizedDR(sets[0], sets[1], 2.0, 1.0, 0.5),
        ]
        rng = np.random.default_rng(61)
        for op in ops:
            cfg = P.operator_to_config(op, sets)
            rebuilt = P.operator_from_config(cfg, sets)
            for x in rng.normal(scale=2.0, size=(20, 2)):
                assert np.allclose(
                    op.apply(x), rebuilt.apply(x), atol=1e-15
                )

    def test_bad_records(self):
        sets = [P.Ball(np.zeros(2), 1.0)]
        with pytest.raises(ConfigError):
            P.operator_from_config({"type": "unknown"}, sets)
        with pytest.raises(ConfigError):
            P.operator_from_config({"type": "relaxed", "set": 3, "lambda": 1.0}, sets)
        with pytest.raises(ConfigError):
            P.operator_from_config({"type": "relaxed"}, sets)
        with pytest.raises(ConfigError):
            P.operator_from_config("not a dict", sets)
