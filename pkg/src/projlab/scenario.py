"""Scenario configuration: a single JSON document per experiment.

A scenario names its sets, a common anchor point w with a locality radius
delta, the operator cycle, a start point, budgets, a mandatory seed, and an
ordered list of requested analyses.  Validation is strict and error messages
carry the offending key path; serialization is canonical so that
serialize(parse(config)) is a fixed point.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError
from .intersection import IntersectionHandle
from .intersection import exact as exact_intersection
from .intersection import oracle as oracle_intersection
from .operators import CyclicTuple, operator_from_config, operator_to_config
from .sets import set_from_config

MAX_DIMENSION = 16

ANALYSIS_KINDS = frozenset({
    "estimate_eps",
    "estimate_kappa",
    "estimate_theta_bar",
    "strong_regularity",
    "quasi_firm_fejer",
    "quasi_coercive",
    "injectable",
    "obtuse_cone",
    "certificate",
    "rate_fit",
    "k_step",
    "compare",
    "envelope",
    "cycle_detect",
    "affine_reduction",
    "affine_identities",
})


@dataclass(frozen=True, eq=False)
class Scenario:
    """A validated scenario configuration."""

    name: str
    dimension: int
    sets: tuple
    intersection: IntersectionHandle
    anchor: np.ndarray
    delta: float
    operators: CyclicTuple
    x0: np.ndarray
    max_cycles: int
    tol: float
    seed: int
    analyses: tuple = field(default=())
    expected: dict = field(default_factory=dict)
    intersection_config: object = "oracle"


def _require(cfg, key, path):
    if key not in cfg:
        raise ConfigError(f"{path}: missing required key '{key}'")
    return cfg[key]


def _vector(value, dim, path):
    try:
        v = np.asarray(value, dtype=float)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{path}: not a numeric vector") from exc
    if v.ndim != 1 or v.size != dim:
        raise ConfigError(f"{path}: expected a vector of length {dim}")
    if not np.all(np.isfinite(v)):
        raise ConfigError(f"{path}: entries must be finite")
    return v


def scenario_from_config(cfg: dict) -> Scenario:
    """Validate a raw config dict into a Scenario (ConfigError on any defect)."""
    if not isinstance(cfg, dict):
        raise ConfigError("scenario: top level must be a JSON object")
    name = _require(cfg, "name", "scenario")
    if not isinstance(name, str) or not name:
        raise ConfigError("name: must be a nonempty string")
    dim = _require(cfg, "dimension", "scenario")
    if not isinstance(dim, int) or not 1 <= dim <= MAX_DIMENSION:
        raise ConfigError(f"dimension: must be an integer in [1, {MAX_DIMENSION}]")
    if "seed" not in cfg:
        raise ConfigError("seed: mandatory (reproducibility contract)")
    seed = cfg["seed"]
    if not isinstance(seed, int) or seed < 0:
        raise ConfigError("seed: must be a nonnegative integer")

    raw_sets = _require(cfg, "sets", "scenario")
    if not isinstance(raw_sets, list) or not raw_sets:
        raise ConfigError("sets: must be a nonempty list")
    sets = []
    for i, record in enumerate(raw_sets):
        try:
            s = set_from_config(record)
        except ConfigError as exc:
            raise ConfigError(f"sets[{i}]: {exc}") from exc
        if s.dim != dim:
            raise ConfigError(f"sets[{i}]: dimension {s.dim} != scenario dimension {dim}")
        sets.append(s)
    sets = tuple(sets)

    raw_inter = _require(cfg, "intersection", "scenario")
    if raw_inter == "oracle":
        intersection = oracle_intersection(sets)
        inter_config = "oracle"
    else:
        try:
            descriptor = set_from_config(raw_inter)
        except ConfigError as exc:
            raise ConfigError(f"intersection: {exc}") from exc
        if descriptor.dim != dim:
            raise ConfigError(f"intersection: dimension {descriptor.dim} != {dim}")
        intersection = exact_intersection(descriptor, sets)
        inter_config = descriptor.to_config()

    anchor = _vector(_require(cfg, "anchor", "scenario"), dim, "anchor")
    for i, s in enumerate(sets):
        d = s.distance(anchor)
        if d > 1e-10:
            raise ConfigError(
                f"anchor: w must belong to every set; distance to sets[{i}] is {d:.3e}")

    delta = _require(cfg, "delta", "scenario")
    if not isinstance(delta, (int, float)) or not delta > 0:
        raise ConfigError("delta: must be a positive number")

    raw_ops = _require(cfg, "operators", "scenario")
    if not isinstance(raw_ops, list) or not raw_ops:
        raise ConfigError("operators: must be a nonempty list")
    ops = []
    for i, record in enumerate(raw_ops):
        try:
            ops.append(operator_from_config(record, sets))
        except ConfigError as exc:
            raise ConfigError(f"operators[{i}]: {exc}") from exc
    operators = CyclicTuple(tuple(ops))

    x0 = _vector(_require(cfg, "x0", "scenario"), dim, "x0")
    max_cycles = _require(cfg, "max_cycles", "scenario")
    if not isinstance(max_cycles, int) or max_cycles < 1:
        raise ConfigError("max_cycles: must be a positive integer")
    tol = _require(cfg, "tol", "scenario")
    if not isinstance(tol, (int, float)) or not tol > 0:
        raise ConfigError("tol: must be a positive number")

    analyses = cfg.get("analyses", [])
    if not isinstance(analyses, list):
        raise ConfigError("analyses: must be a list")
    for i, record in enumerate(analyses):
        if not isinstance(record, dict) or "kind" not in record:
            raise ConfigError(f"analyses[{i}]: must be an object with a 'kind'")
        if record["kind"] not in ANALYSIS_KINDS:
            raise ConfigError(
                f"analyses[{i}].kind: unknown analysis '{record['kind']}'")
    expected = cfg.get("expected", {})
    if not isinstance(expected, dict):
        raise ConfigError("expected: must be an object")

    return Scenario(name, dim, sets, intersection, anchor, float(delta),
                    operators, x0, max_cycles, float(tol), seed,
                    tuple(dict(a) for a in analyses), dict(expected),
                    inter_config)


def scenario_to_config(sc: Scenario) -> dict:
    """Canonical (normalized) config dict for a scenario."""
    return {
        "name": sc.name,
        "dimension": sc.dimension,
        "sets": [s.to_config() for s in sc.sets],
        "intersection": sc.intersection_config,
        "anchor": [float(v) for v in sc.anchor],
        "delta": sc.delta,
        "operators": [operator_to_config(op, sc.sets) for op in sc.operators.members],
        "x0": [float(v) for v in sc.x0],
        "max_cycles": sc.max_cycles,
        "tol": sc.tol,
        "seed": sc.seed,
        "analyses": [dict(a) for a in sc.analyses],
        "expected": dict(sc.expected),
    }


def load_scenario(path) -> Scenario:
    """Parse and validate a scenario JSON file."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            cfg = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"{path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(
            f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: "
            f"{exc.msg}") from exc
    try:
        return scenario_from_config(cfg)
    except ConfigError as exc:
        raise ConfigError(f"{path}: {exc}") from exc


def save_scenario(sc: Scenario, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(scenario_to_config(sc), fh, indent=2, sort_keys=True)
        fh.write("\n")


def bundled_scenario_names() -> list:
    """Names of the scenarios shipped with the package, sorted."""
    from importlib import resources

    names = []
    for entry in resources.files("projlab.scenarios").iterdir():
        if entry.name.endswith(".json"):
            names.append(entry.name[:-5])
    return sorted(names)


def load_bundled(name: str) -> Scenario:
    """Load a bundled scenario by name."""
    from importlib import resources

    ref = resources.files("projlab.scenarios") / f"{name}.json"
    if not ref.is_file():
        raise ConfigError(f"no bundled scenario named '{name}'")
    cfg = json.loads(ref.read_text(encoding="utf-8"))
    try:
        return scenario_from_config(cfg)
    except ConfigError as exc:
        raise ConfigError(f"bundled '{name}': {exc}") from exc
