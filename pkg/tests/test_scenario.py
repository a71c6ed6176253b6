"""Scenario configs: validation, normalization, round-trips, bundled files."""

import json

import numpy as np
import pytest

import projlab as P
from projlab import ConfigError

BUNDLED = [
    "degenerate_three_halfspaces",
    "dr_affine_blend",
    "dr_affine_reflect",
    "dr_two_lines",
    "enlargement_injectability",
    "qff_suite",
    "reflection_projection_axes",
    "reflection_projection_orthant",
    "reflector_cycle_counterexample",
    "semi_intrepid_circles",
    "two_lines_angle_30",
    "two_lines_angle_45",
    "two_lines_angle_60",
]


def minimal_config(**overrides):
    cfg = {
        "name": "unit",
        "dimension": 2,
        "seed": 1,
        "sets": [
            {"type": "hyperplane", "a": [0.0, 1.0], "b": 0.0},
            {"type": "hyperplane", "a": [1.0, 0.0], "b": 0.0},
        ],
        "intersection": {"type": "finite_points", "points": [[0.0, 0.0]]},
        "anchor": [0.0, 0.0],
        "delta": 1.0,
        "operators": [
            {"type": "relaxed", "set": 0, "lambda": 1.0},
            {"type": "relaxed", "set": 1, "lambda": 1.0},
        ],
        "x0": [3.0, 4.0],
        "max_cycles": 50,
        "tol": 1e-10,
        "analyses": [],
        "expected": {},
    }
    cfg.update(overrides)
    return cfg


class TestParsing:
    def test_minimal_config_parses(self):
        sc = P.scenario_from_config(minimal_config())
        assert sc.name == "unit"
        assert sc.dimension == 2
        assert len(sc.sets) == 2
        assert len(sc.operators) == 2
        assert np.allclose(sc.x0, [3.0, 4.0])
        assert sc.expected == {}

    def test_oracle_intersection_accepted(self):
        sc = P.scenario_from_config(minimal_config(intersection="oracle"))
        assert sc.intersection_config == "oracle"
        assert sc.intersection.approximate

    def test_exact_intersection_not_approximate(self):
        sc = P.scenario_from_config(minimal_config())
        assert not sc.intersection.approximate

    def test_scenario_is_frozen(self):
        sc = P.scenario_from_config(minimal_config())
        with pytest.raises(Exception):
            sc.name = "other"


class TestValidation:
    @pytest.mark.parametrize(
        "mutate, fragment",
        [
            (lambda c: c.pop("name"), "name"),
            (lambda c: c.update(name=""), "name"),
            (lambda c: c.update(dimension=0), "dimension"),
            (lambda c: c.update(dimension=17), "dimension"),
            (lambda c: c.pop("seed"), "seed"),
            (lambda c: c.update(seed=-1), "seed"),
            (lambda c: c.update(sets=[]), "sets"),
            (lambda c: c.update(delta=0.0), "delta"),
            (lambda c: c.update(operators=[]), "operators"),
            (lambda c: c.update(max_cycles=0), "max_cycles"),
            (lambda c: c.update(tol=0.0), "tol"),
            (lambda c: c.update(analyses="nope"), "analyses"),
            (lambda c: c.update(expected=[1]), "expected"),
        ],
    )
    def test_field_errors_name_the_field(self, mutate, fragment):
        cfg = minimal_config()
        mutate(cfg)
        with pytest.raises(ConfigError) as exc:
            P.scenario_from_config(cfg)
        assert fragment in str(exc.value)

    def test_set_dimension_mismatch(self):
        cfg = minimal_config()
        cfg["sets"][0] = {"type": "hyperplane", "a": [0.0, 1.0, 0.0], "b": 0.0}
        with pytest.raises(ConfigError) as exc:
            P.scenario_from_config(cfg)
        assert "sets[0]" in str(exc.value)

    def test_intersection_dimension_mismatch(self):
        cfg = minimal_config(
            intersection={"type": "finite_points", "points": [[0.0, 0.0, 0.0]]}
        )
        with pytest.raises(ConfigError) as exc:
            P.scenario_from_config(cfg)
        assert "intersection" in str(exc.value)

    def test_anchor_must_belong_to_every_set(self):
        cfg = minimal_config(anchor=[0.0, 1.0])
        with pytest.raises(ConfigError) as exc:
            P.scenario_from_config(cfg)
        assert "anchor" in str(exc.value)

    def test_x0_length(self):
        cfg = minimal_config(x0=[1.0])
        with pytest.raises(ConfigError):
            P.scenario_from_config(cfg)

    def test_unknown_analysis_kind(self):
        cfg = minimal_config(analyses=[{"kind": "mystery"}])
        with pytest.raises(ConfigError) as exc:
            P.scenario_from_config(cfg)
        assert "mystery" in str(exc.value)

    def test_operator_set_index_out_of_range(self):
        cfg = minimal_config()
        cfg["operators"][0]["set"] = 5
        with pytest.raises(ConfigError):
            P.scenario_from_config(cfg)

    def test_top_level_must_be_object(self):
        with pytest.raises(ConfigError):
            P.scenario_from_config([1, 2, 3])


class TestRoundTrip:
    def test_normalized_config_is_idempotent(self):
        cfg = minimal_config()
        sc1 = P.scenario_from_config(cfg)
        norm1 = P.scenario_to_config(sc1)
        sc2 = P.scenario_from_config(norm1)
        norm2 = P.scenario_to_config(sc2)
        assert norm1 == norm2

    def test_save_and_load(self, tmp_path):
        sc = P.scenario_from_config(minimal_config())
        path = tmp_path / "unit.json"
        P.save_scenario(sc, path)
        sc2 = P.load_scenario(path)
        assert P.scenario_to_config(sc) == P.scenario_to_config(sc2)

    def test_load_reports_json_position(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text('{\n  "name": "x",\n  oops\n}\n')
        with pytest.raises(ConfigError) as exc:
            P.load_scenario(path)
        msg = str(exc.value)
        assert "line 3" in msg
        assert "column" in msg

    def test_load_missing_file(self, tmp_path):
        with pytest.raises(ConfigError):
            P.load_scenario(tmp_path / "absent.json")


class TestBundled:
    def test_names(self):
        assert P.bundled_scenario_names() == BUNDLED

    @pytest.mark.parametrize("name", BUNDLED)
    def test_every_bundled_scenario_round_trips(self, name):
        sc = P.load_bundled(name)
        norm1 = P.scenario_to_config(sc)
        sc2 = P.scenario_from_config(norm1)
        assert norm1 == P.scenario_to_config(sc2)
        # normalized form also survives a JSON encode/decode cycle
        again = P.scenario_from_config(json.loads(json.dumps(norm1)))
        assert P.scenario_to_config(again) == norm1

    def test_unknown_bundled_name(self):
        with pytest.raises(ConfigError):
            P.load_bundled("missing_scenario")
