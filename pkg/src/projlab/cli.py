"""Command-line front end: run scenarios, verify the bundled suite, list the
catalog.

Exit codes: 0 = all requested assertions pass, 1 = an assertion failed,
2 = usage or configuration error.  All wall-clock measurements live under
keys named "timing" so reports are byte-identical across runs of the same
seed once timing subtrees are dropped.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import affine as affine_mod
from . import analysis as analysis_mod
from . import rates as rates_mod
from . import runner as runner_mod
from .errors import ConfigError, ProjlabError
from .operators import GeneralizedDR, RelaxedProjector, SemiIntrepidProjector
from .rates import RateCertificate
from .scenario import (
    Scenario,
    bundled_scenario_names,
    load_bundled,
    load_scenario,
)
from .sets import is_obtuse_cone

_MISSING = object()


# ---------------------------------------------------------------------------
# JSON helpers


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, float) and not np.isfinite(obj):
        return repr(obj)
    return obj


def _estimate_dict(est):
    return _jsonable({
        "kind": est.kind, "value": est.value, "delta": est.delta,
        "samples": est.samples, "seed": est.seed, "bound": est.bound,
        "extra": est.extra,
    })


def _report_dict(rep):
    return _jsonable({
        "name": rep.name, "samples": rep.samples, "violations": rep.violations,
        "worst_margin": rep.worst_margin, "seed": rep.seed,
        "check_tol": rep.check_tol, "passed": rep.passed, "extra": rep.extra,
    })


def _cert_dict(cert: RateCertificate):
    return _jsonable({
        "theorem": cert.theorem, "inputs": cert.inputs,
        "gamma_total": cert.gamma_total, "rho_block": cert.rho_block,
        "block_len": cert.block_len, "rho_per_iterate": cert.rho_per_iterate,
        "rho_stated": cert.rho_stated, "applicable": cert.applicable,
        "delta0_over_delta": cert.delta0_over_delta,
        "start_radius_over_delta0": cert.start_radius_over_delta0,
        "start_prefactor": cert.start_prefactor, "provenance": cert.provenance,
    })


def _fit_dict(fit):
    return _jsonable({
        "rho": fit.rho, "sigma": fit.sigma, "window": list(fit.window),
        "n_points": fit.n_points, "r_squared": fit.r_squared,
        "censored": fit.censored, "non_convergent": fit.non_convergent,
    })


# ---------------------------------------------------------------------------
# value resolution inside analysis records


def _resolve(value, ctx, path):
    """Resolve a scalar analysis argument: a number, an "@label" reference to
    an earlier result, or {"ref"/"value", "times", "plus", "clamp_min",
    "clamp_max"} arithmetic on one."""
    if isinstance(value, bool):
        raise ConfigError(f"{path}: expected a number, got a boolean")
    if isinstance(value, (int, float)):
        return float(value)
    if isinstance(value, str):
        if not value.startswith("@"):
            raise ConfigError(f"{path}: string values must be '@label' references")
        label = value[1:]
        if label not in ctx:
            raise ConfigError(f"{path}: unknown reference '@{label}'")
        obj = ctx[label]
        if isinstance(obj, analysis_mod.RegularityEstimate):
            return float(obj.value)
        if isinstance(obj, (int, float)):
            return float(obj)
        raise ConfigError(f"{path}: '@{label}' is not a numeric result")
    if isinstance(value, dict):
        if "ref" in value:
            base = _resolve(value["ref"], ctx, f"{path}.ref")
        elif "value" in value:
            base = _resolve(value["value"], ctx, f"{path}.value")
        else:
            raise ConfigError(f"{path}: need 'ref' or 'value'")
        if "times" in value:
            base *= float(value["times"])
        if "plus" in value:
            base += float(value["plus"])
        if "clamp_min" in value:
            base = max(base, float(value["clamp_min"]))
        if "clamp_max" in value:
            base = min(base, float(value["clamp_max"]))
        return base
    raise ConfigError(f"{path}: cannot resolve {value!r}")


def _resolve_list(value, ctx, path):
    if not isinstance(value, list) or not value:
        raise ConfigError(f"{path}: expected a nonempty list")
    return [_resolve(v, ctx, f"{path}[{i}]") for i, v in enumerate(value)]


def _resolve_certificate(value, ctx, path) -> RateCertificate:
    if not (isinstance(value, str) and value.startswith("@")):
        raise ConfigError(f"{path}: expected an '@label' certificate reference")
    label = value[1:]
    obj = ctx.get(label)
    if not isinstance(obj, RateCertificate):
        raise ConfigError(f"{path}: '@{label}' is not a certificate")
    return obj


def _build_certificate(record, ctx, path):
    theorem = record.get("theorem")
    args = record.get("args", {})

    def num(key, default=_MISSING):
        if key not in args:
            if default is _MISSING:
                raise ConfigError(f"{path}.args: missing '{key}'")
            return default
        return _resolve(args[key], ctx, f"{path}.args.{key}")

    def lst(key):
        if key not in args:
            raise ConfigError(f"{path}.args: missing '{key}'")
        return _resolve_list(args[key], ctx, f"{path}.args.{key}")

    extra = {}
    if theorem == "rate_cyclic_projections":
        cert = rates_mod.rate_cyclic_projections(int(num("m")), num("eps"),
                                                 num("kappa"))
    elif theorem == "rate_convex_cyclic":
        cert = rates_mod.rate_convex_cyclic(lst("lambdas"), num("kappa"))
    elif theorem == "rate_cyclic_relaxed":
        cert = rates_mod.rate_cyclic_relaxed(lst("lambdas"), num("eps"),
                                             num("kappa"))
    elif theorem == "rate_cyclic_overrelaxed":
        cert = rates_mod.rate_cyclic_overrelaxed(lst("lambdas"), num("eps"),
                                                 num("kappa"))
    elif theorem == "rate_cyclic_semi_intrepid":
        cert = rates_mod.rate_cyclic_semi_intrepid(lst("alphas"), num("eps"),
                                                   num("kappa"))
    elif theorem == "rate_refined":
        cert = rates_mod.rate_refined(lst("gammas"), lst("betas"), num("kappa"))
    elif theorem == "rate_dist_qff":
        cert = rates_mod.rate_dist_qff(lst("gammas"), lst("betas"), num("nu"),
                                       num("kappa"))
    elif theorem == "rate_cyclic_dr":
        cert = rates_mod.rate_cyclic_dr(lst("gammas"), lst("betas"), num("nu"),
                                        num("kappa"))
    elif theorem == "rate_dr_pair":
        lam, mu, alpha = num("lambda"), num("mu"), num("alpha")
        eps1, eps2 = num("eps1", 0.0), num("eps2", 0.0)
        theta, kappa = num("theta"), num("kappa")
        consts = rates_mod.dr_constants(lam, mu, alpha, eps1, eps2)
        nu = rates_mod.dr_coercivity(lam, mu, alpha, theta, kappa)
        cert = rates_mod.rate_cyclic_dr([consts.gamma], [consts.beta], nu, kappa)
        extra = {"gamma": consts.gamma, "beta": consts.beta, "nu": nu,
                 "theta": theta}
    else:
        raise ConfigError(f"{path}.theorem: unknown theorem '{theorem}'")
    return cert, extra


# ---------------------------------------------------------------------------
# scenario execution


def _pick_set(sc: Scenario, value, path):
    if not isinstance(value, int) or not 0 <= value < len(sc.sets):
        raise ConfigError(f"{path}: set index out of range")
    return sc.sets[value]


def _pick_operator(sc: Scenario, value, path):
    members = sc.operators.members
    if not isinstance(value, int) or not 0 <= value < len(members):
        raise ConfigError(f"{path}: operator index out of range")
    return members[value]


def _store(ctx, record, default_label, obj, path):
    label = record.get("label", default_label)
    if not isinstance(label, str) or not label:
        raise ConfigError(f"{path}.label: must be a nonempty string")
    if label in ctx:
        raise ConfigError(f"{path}.label: duplicate label '{label}'")
    ctx[label] = obj
    return label


def _qff_constants(record, op, ctx, path):
    """Constants for a quasi-firm check from the operator's own parameters."""
    rule = record.get("rule", "relaxed")
    if rule == "relaxed":
        if not isinstance(op, RelaxedProjector):
            raise ConfigError(f"{path}: rule 'relaxed' needs a relaxed projector")
        eps = _resolve(record.get("eps", 0.0), ctx, f"{path}.eps")
        c = rates_mod.relaxed_projector_constants(op.lam, eps)
    elif rule == "semi_intrepid":
        if not isinstance(op, SemiIntrepidProjector):
            raise ConfigError(
                f"{path}: rule 'semi_intrepid' needs a semi-intrepid projector")
        eps = _resolve(record.get("eps", 0.0), ctx, f"{path}.eps")
        c = rates_mod.semi_intrepid_constants(op.alpha, eps)
    elif rule == "dr":
        if not isinstance(op, GeneralizedDR):
            raise ConfigError(f"{path}: rule 'dr' needs a generalized DR operator")
        eps1 = _resolve(record.get("eps1", 0.0), ctx, f"{path}.eps1")
        eps2 = _resolve(record.get("eps2", 0.0), ctx, f"{path}.eps2")
        eps = (eps1, eps2)
        c = rates_mod.dr_constants(op.lam, op.mu, op.alpha, eps1, eps2)
    else:
        raise ConfigError(f"{path}.rule: unknown constants rule '{rule}'")
    return c, eps


def execute_scenario(sc: Scenario, out_dir=None, seed_override=None) -> dict:
    """Run a scenario's trajectory and its requested analyses in order.

    Returns the report dict (top-level keys: scenario, constants,
    certificates, fit, comparisons, checks, passed, timing).  If out_dir is
    given, writes trajectory.csv / report.json / shadow.csv there.
    """
    seed = sc.seed if seed_override is None else int(seed_override)
    t0 = time.perf_counter()
    traj = runner_mod.run(sc.operators, sc.x0, sc.sets, sc.intersection,
                          max_cycles=sc.max_cycles, tol=sc.tol, seed=seed)
    constants = {}
    certificates = {}
    fits = {}
    comparisons = []
    checks = []
    ctx = {}
    hull_cache = {}
    shadow_points = None

    def hull():
        if "L" not in hull_cache:
            hull_cache["L"] = affine_mod.affine_hull(sc.sets, seed=seed)
        return hull_cache["L"]

    if "stop_reason" in sc.expected:
        checks.append({
            "name": "stop_reason", "kind": "expected",
            "expected": sc.expected["stop_reason"], "actual": traj.stop_reason,
            "passed": traj.stop_reason == sc.expected["stop_reason"],
        })

    for i, record in enumerate(sc.analyses):
        kind = record["kind"]
        path = f"analyses[{i}]"
        rseed = int(record.get("seed", seed))
        samples = record.get("samples")
        delta = float(record.get("delta", sc.delta))

        if kind == "estimate_eps":
            s = _pick_set(sc, record.get("set"), f"{path}.set")
            est = analysis_mod.estimate_eps_regularity(
                s, sc.anchor, delta, samples=samples or 600, seed=rseed)
            label = _store(ctx, record, "eps", est, path)
            constants[label] = _estimate_dict(est)

        elif kind == "estimate_kappa":
            est = analysis_mod.estimate_linear_regularity(
                sc.sets, sc.intersection, sc.anchor, delta,
                samples=samples or 2000, seed=rseed)
            label = _store(ctx, record, "kappa", est, path)
            constants[label] = _estimate_dict(est)

        elif kind == "estimate_theta_bar":
            pair = record.get("sets", [0, 1])
            a = _pick_set(sc, pair[0], f"{path}.sets[0]")
            b = _pick_set(sc, pair[1], f"{path}.sets[1]")
            est = analysis_mod.estimate_theta_bar(
                a, b, sc.anchor, samples=samples or 256, seed=rseed,
                delta=delta)
            label = _store(ctx, record, "theta", est, path)
            constants[label] = _estimate_dict(est)

        elif kind == "strong_regularity":
            idxs = record.get("sets", list(range(len(sc.sets))))
            system = [_pick_set(sc, j, f"{path}.sets") for j in idxs]
            est = analysis_mod.check_strong_regularity(
                system, sc.anchor, delta, samples=samples or 2000, seed=rseed)
            label = _store(ctx, record, f"zeta_{i}", est, path)
            constants[label] = _estimate_dict(est)
            entry = {"name": label, "kind": kind, "sets": list(idxs),
                     "value": est.value, "strong": est.extra["strong"]}
            expect = record.get("expect")
            passed = True
            if expect == "fail":
                passed = not est.extra["strong"]
            elif expect == "pass":
                passed = est.extra["strong"]
            if "expect_min" in record:
                entry["expect_min"] = record["expect_min"]
                passed = passed and est.value >= float(record["expect_min"])
            entry["passed"] = passed
            checks.append(entry)

        elif kind == "quasi_firm_fejer":
            op = _pick_operator(sc, record.get("operator"), f"{path}.operator")
            refsel = record.get("refset", "target")
            if refsel == "intersection":
                refset = sc.intersection
            elif refsel == "target":
                if not hasattr(op, "target"):
                    raise ConfigError(f"{path}.refset: operator has no single target")
                refset = op.target
            else:
                refset = _pick_set(sc, refsel, f"{path}.refset")
            consts, eps = _qff_constants(record, op, ctx, path)
            rep = analysis_mod.check_quasi_firm_fejer(
                op, refset, consts.gamma, consts.beta, sc.anchor, delta,
                samples=samples or 1000, seed=rseed)
            entry = _report_dict(rep)
            entry.update({"name": record.get("label", f"qff_{i}"),
                          "kind": kind, "eps": _jsonable(eps),
                          "gamma": consts.gamma, "beta": consts.beta})
            checks.append(entry)

        elif kind == "quasi_coercive":
            op = _pick_operator(sc, record.get("operator"), f"{path}.operator")
            csel = record.get("cset", "target")
            if csel == "intersection":
                cset = sc.intersection
            elif csel == "target":
                if not hasattr(op, "target"):
                    raise ConfigError(f"{path}.cset: operator has no single target")
                cset = op.target
            else:
                cset = _pick_set(sc, csel, f"{path}.cset")
            nu_spec = record.get("nu", "lambda")
            if nu_spec == "lambda":
                if not isinstance(op, RelaxedProjector):
                    raise ConfigError(f"{path}.nu: 'lambda' needs a relaxed projector")
                nu = op.lam
            else:
                nu = _resolve(nu_spec, ctx, f"{path}.nu")
            rep = analysis_mod.check_quasi_coercive(
                op, cset, nu, sc.anchor, delta, samples=samples or 1000,
                seed=rseed)
            entry = _report_dict(rep)
            entry.update({"name": record.get("label", f"coercive_{i}"),
                          "kind": kind})
            if record.get("expect_equality"):
                eq_tol = float(record.get("equality_tol", 1e-12))
                entry["equality_tol"] = eq_tol
                entry["passed"] = bool(entry["passed"]
                                       and rep.extra["max_abs_gap"] <= eq_tol)
            checks.append(entry)

        elif kind == "injectable":
            s = _pick_set(sc, record.get("set"), f"{path}.set")
            tau = _resolve(record.get("tau"), ctx, f"{path}.tau")
            rep = analysis_mod.check_injectable(
                s, tau, sc.anchor, delta, samples=samples or 1000, seed=rseed)
            entry = _report_dict(rep)
            entry.update({"name": record.get("label", f"injectable_{i}"),
                          "kind": kind, "tau": tau})
            if record.get("expect") == "fail":
                entry["expected_failure"] = True
                entry["passed"] = rep.violations >= 1
            checks.append(entry)

        elif kind == "obtuse_cone":
            s = _pick_set(sc, record.get("set"), f"{path}.set")
            result = is_obtuse_cone(s, samples=samples or 256, seed=rseed)
            expect = bool(record.get("expect", True))
            entry = {"name": record.get("label", f"obtuse_{i}"), "kind": kind,
                     "passed": bool(result["obtuse"]) == expect}
            entry.update(_jsonable(result))
            checks.append(entry)

        elif kind == "certificate":
            cert, extra = _build_certificate(record, ctx, path)
            label = _store(ctx, record, f"cert_{i}", cert, path)
            entry = _cert_dict(cert)
            if extra:
                entry["derived"] = _jsonable(extra)
            certificates[label] = entry

        elif kind == "rate_fit":
            kwargs = {}
            if "tail_fraction" in record:
                kwargs["tail_fraction"] = float(record["tail_fraction"])
            if "burn_in" in record:
                kwargs["burn_in"] = int(record["burn_in"])
            fit = runner_mod.fit_rlinear(traj.cycle_errors(), **kwargs)
            label = _store(ctx, record, "fit", fit, path)
            fits[label] = _fit_dict(fit)
            if "expect_rho" in record or record.get("expect_non_convergent"):
                entry = {"name": label, "kind": kind, "rho": fit.rho,
                         "passed": True}
                if "expect_rho" in record:
                    want = float(record["expect_rho"])
                    tol = float(record.get("expect_tol", 1e-3))
                    entry.update({"expect_rho": want, "expect_tol": tol})
                    entry["passed"] = abs(fit.rho - want) <= tol
                if record.get("expect_non_convergent"):
                    entry["expect_non_convergent"] = True
                    entry["passed"] = bool(entry["passed"] and fit.non_convergent)
                checks.append(entry)

        elif kind == "k_step":
            if "certificate" in record:
                cert = _resolve_certificate(record["certificate"], ctx,
                                            f"{path}.certificate")
                k = cert.block_len
                rho_bound = cert.rho_block
            else:
                k = int(record.get("k", 1))
                rho_bound = _resolve(record.get("rho_bound"), ctx,
                                     f"{path}.rho_bound")
            rep = runner_mod.check_k_step_reduction(traj, k, rho_bound)
            entry = _report_dict(rep)
            entry.update({"name": record.get("label", f"k_step_{i}"),
                          "kind": kind})
            checks.append(entry)

        elif kind == "compare":
            cert = _resolve_certificate(record.get("certificate"), ctx,
                                        f"{path}.certificate")
            slack = float(record.get("slack", 0.02))
            result = runner_mod.compare_certificate(
                traj, cert, slack=slack, raise_on_violation=False)
            result["name"] = record.get("label", f"compare_{i}")
            comparisons.append(_jsonable(result))

        elif kind == "envelope":
            cert = _resolve_certificate(record.get("certificate"), ctx,
                                        f"{path}.certificate")
            rep = runner_mod.check_rlinear_envelope(traj, cert)
            entry = _report_dict(rep)
            entry.update({"name": record.get("label", f"envelope_{i}"),
                          "kind": kind})
            checks.append(entry)

        elif kind == "cycle_detect":
            tol = float(record.get("tol", 1e-12))
            found = runner_mod.detect_cycle(traj, tol=tol)
            entry = {"name": record.get("label", f"cycle_{i}"), "kind": kind}
            if found is None:
                entry.update({"passed": "expect_period" not in record,
                              "period": None})
            else:
                entry.update({"period": found.period,
                              "start_index": found.start_index,
                              "states": _jsonable(found.states),
                              "max_deviation": found.max_deviation,
                              "passed": True})
                if "expect_period" in record:
                    entry["expect_period"] = record["expect_period"]
                    entry["passed"] = found.period == int(record["expect_period"])
                if entry["passed"] and "expect_states" in record:
                    want = [np.asarray(s, dtype=float)
                            for s in record["expect_states"]]
                    got = list(found.states)
                    matched = len(want) == len(got)
                    if matched:
                        used = [False] * len(got)
                        for wst in want:
                            hit = next(
                                (j for j, g in enumerate(got)
                                 if not used[j]
                                 and np.linalg.norm(g - wst) <= tol), None)
                            if hit is None:
                                matched = False
                                break
                            used[hit] = True
                    entry["passed"] = matched
            checks.append(entry)

        elif kind == "affine_reduction":
            L = hull()
            shadow_points, rep = affine_mod.shadow_run(traj, L)
            entry = {
                "name": record.get("label", f"affine_{i}"), "kind": kind,
                "eta": rep.eta, "classification": rep.classification,
                "recursion_residual": rep.recursion_residual,
                "gap_law_residual": rep.gap_law_residual,
                "limit_detected": rep.limit_detected,
                "fix_residual": rep.fix_residual,
                "shadow_limit": _jsonable(rep.shadow_limit),
                "full_limit": _jsonable(rep.full_limit),
                "extra": _jsonable(rep.extra),
            }
            passed = rep.gap_law_residual <= 1e-9
            expect = record.get("expect")
            if expect is not None:
                entry["expect"] = expect
                passed = passed and rep.classification == expect
            if rep.classification == "FixedPointShadow":
                passed = passed and rep.fix_residual <= 1e-8
            else:
                final_dc = float(traj.c_dist[-1])
                entry["final_dC"] = final_dc
                passed = passed and final_dc <= 1e-8
            entry["passed"] = passed
            checks.append(entry)

        elif kind == "affine_identities":
            s = _pick_set(sc, record.get("set"), f"{path}.set")
            lam = _resolve(record.get("lambda", 1.0), ctx, f"{path}.lambda")
            rep = affine_mod.verify_affine_identities(
                s, hull(), lam, samples=samples or 200, seed=rseed)
            entry = _report_dict(rep)
            entry.update({"name": record.get("label", f"identities_{i}"),
                          "kind": kind})
            checks.append(entry)

        else:  # pragma: no cover - scenario validation rejects unknown kinds
            raise ConfigError(f"{path}.kind: unhandled analysis '{kind}'")

    passed = (all(c.get("passed", True) for c in checks)
              and all(c.get("ok", True) for c in comparisons))
    report = {
        "scenario": {
            "name": sc.name,
            "dimension": sc.dimension,
            "seed": seed,
            "stop_reason": traj.stop_reason,
            "n_cycles": traj.n_cycles,
            "final": _jsonable(traj.final),
            "final_dC": float(traj.c_dist[-1]),
            "tol": sc.tol,
        },
        "constants": constants,
        "certificates": certificates,
        "fit": fits,
        "comparisons": comparisons,
        "checks": checks,
        "passed": passed,
        "timing": {
            "wall_time_s": time.perf_counter() - t0,
            "run_wall_time_s": traj.wall_time_s,
        },
    }
    if out_dir is not None:
        os.makedirs(out_dir, exist_ok=True)
        runner_mod.export_trajectory_csv(traj, os.path.join(out_dir, "trajectory.csv"))
        if shadow_points is not None:
            affine_mod.export_shadow_csv(traj, shadow_points,
                                         os.path.join(out_dir, "shadow.csv"))
        with open(os.path.join(out_dir, "report.json"), "w", encoding="utf-8") as fh:
            json.dump(report, fh, indent=2, sort_keys=True)
            fh.write("\n")
    return report


# ---------------------------------------------------------------------------
# subcommand implementations


def _format_report_text(report) -> str:
    lines = []
    sc = report["scenario"]
    lines.append(f"scenario {sc['name']}: stop={sc['stop_reason']} "
                 f"cycles={sc['n_cycles']} final_dC={sc['final_dC']:.3e}")
    for label in sorted(report["constants"]):
        c = report["constants"][label]
        lines.append(f"  constant {label}: {c['value']:.6g} ({c['kind']})")
    for label in sorted(report["certificates"]):
        c = report["certificates"][label]
        lines.append(
            f"  certificate {label}: {c['theorem']} rho_block={c['rho_block']:.6g} "
            f"block={c['block_len']} applicable={c['applicable']}")
    for label in sorted(report["fit"]):
        f = report["fit"][label]
        lines.append(f"  fit {label}: rho={f['rho']:.6g} R2={f['r_squared']:.4f} "
                     f"non_convergent={f['non_convergent']}")
    for comp in report["comparisons"]:
        status = "PASS" if comp.get("ok", True) else "FAIL"
        lines.append(
            f"  compare {comp['name']}: fit={comp.get('rho_fit_per_iterate')} "
            f"cert={comp.get('rho_cert_per_iterate')} [{status}]")
    for check in report["checks"]:
        status = "PASS" if check.get("passed", True) else "FAIL"
        detail = ""
        if "worst_margin" in check:
            detail = f" worst_margin={check['worst_margin']:.3e}"
        elif "value" in check:
            detail = f" value={check['value']:.6g}"
        lines.append(f"  check {check['name']} ({check['kind']}): [{status}]{detail}")
    lines.append(f"result: {'PASS' if report['passed'] else 'FAIL'}")
    return "\n".join(lines)


def run_scenario(config_path, out_root="out", force=False, seed=None,
                 fmt="text") -> int:
    """Load, execute, and report one scenario; returns the exit code."""
    try:
        sc = load_scenario(config_path)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    out_dir = os.path.join(out_root, sc.name)
    targets = [os.path.join(out_dir, f)
               for f in ("trajectory.csv", "report.json", "shadow.csv")]
    if any(os.path.exists(t) for t in targets) and not force:
        print(f"output in {out_dir} exists; use --force to overwrite",
              file=sys.stderr)
        return 2
    try:
        report = execute_scenario(sc, out_dir=out_dir, seed_override=seed)
    except ProjlabError as exc:
        print(f"scenario failed: {exc}", file=sys.stderr)
        return 1
    if fmt == "json":
        print(json.dumps(report, indent=2, sort_keys=True))
    else:
        print(_format_report_text(report))
    return 0 if report["passed"] else 1


def verify_suite(workers=None, out_root=None, seed=None) -> dict:
    """Execute every bundled scenario (concurrently) and collect reports."""
    t0 = time.perf_counter()
    names = bundled_scenario_names()

    def one(name):
        try:
            sc = load_bundled(name)
            out_dir = os.path.join(out_root, name) if out_root else None
            return execute_scenario(sc, out_dir=out_dir, seed_override=seed)
        except ProjlabError as exc:
            return {
                "scenario": {"name": name},
                "constants": {}, "certificates": {}, "fit": {},
                "comparisons": [], "checks": [],
                "error": f"{type(exc).__name__}: {exc}",
                "passed": False,
                "timing": {"wall_time_s": 0.0},
            }

    max_workers = workers or min(8, max(1, len(names)))
    with ThreadPoolExecutor(max_workers=max_workers) as pool:
        reports = list(pool.map(one, names))
    suite = {r["scenario"]["name"]: r for r in reports}
    passed = all(r["passed"] for r in reports)
    return {
        "suite": {name: suite[name] for name in sorted(suite)},
        "passed": passed,
        "counts": {
            "scenarios": len(names),
            "failed": sum(1 for r in reports if not r["passed"]),
        },
        "timing": {"wall_time_s": time.perf_counter() - t0},
    }


def _format_suite_text(summary) -> str:
    lines = []
    for name in sorted(summary["suite"]):
        report = summary["suite"][name]
        if "error" in report:
            lines.append(f"{name}: ERROR {report['error']}")
            continue
        status = "PASS" if report["passed"] else "FAIL"
        n_checks = len(report["checks"]) + len(report["comparisons"])
        lines.append(f"{name}: [{status}] "
                     f"stop={report['scenario']['stop_reason']} "
                     f"checks={n_checks}")
        for check in report["checks"]:
            if not check.get("passed", True):
                lines.append(f"  FAIL {check['name']} ({check['kind']})")
        for comp in report["comparisons"]:
            if not comp.get("ok", True):
                lines.append(f"  FAIL compare {comp['name']}")
    counts = summary["counts"]
    lines.append(f"total: {counts['scenarios']} scenarios, "
                 f"{counts['failed']} failed")
    lines.append(f"result: {'PASS' if summary['passed'] else 'FAIL'}")
    return "\n".join(lines)


_CATALOG = {
    "sets": [
        ("halfspace", "{x : <a, x> <= b}, a != 0"),
        ("hyperplane", "{x : <a, x> = b}, a != 0"),
        ("affine", "anchor + span(orthonormal basis rows)"),
        ("ball", "closed ball, radius >= 0"),
        ("sphere", "distance sphere, radius > 0 (nonconvex)"),
        ("box", "componentwise bounds lower <= upper"),
        ("orthant", "sign-constrained orthant, signs in {-1, 0, 1}"),
        ("cone", "finitely generated polyhedral cone (<= 12 generators)"),
        ("enlargement", "inner set + ball of radius tau"),
        ("union", "finite union, ties -> lowest member index (nonconvex)"),
        ("finite_points", "finite point set, ties -> lexicographically smallest"),
        ("translate", "inner set shifted by a vector"),
    ],
    "operators": [
        ("relaxed", "relaxed projector (lambda in (0,2]); 1 = projector, 2 = reflector"),
        ("semi-intrepid", "projection extrapolated into the set (alpha in [0,1], tau >= 0)"),
        ("generalized-dr", "lambda, mu in (0,2], alpha in (0,1]; blended two-set step"),
        ("cyclic tuple", "flat nonempty list applied in order (one cycle)"),
    ],
    "theorems": [
        ("relaxed_projector_constants", "lambda in (0,2], eps in [0,1)"),
        ("averaged_constants", "gamma >= 1, beta >= 0, lambda in (0, 1+beta]"),
        ("semi_intrepid_constants", "alpha in [0,1], eps in [0,1)"),
        ("dr_constants", "lambda, mu in (0,2], alpha in (0,1], eps1 in [0,1/3], eps2 in [0,1)"),
        ("dr_coercivity", "alpha > 0, theta in (-1,1), kappa > 0"),
        ("rate_dist_qff", "quasi-firm lists, nu in (0,1], kappa > 0"),
        ("rate_dist_qf", "one non-firm member j, remaining firm"),
        ("rate_refined", "firm lists, block length m-1"),
        ("rate_cyclic_relaxed", "lambda_list in (0,2]^m, at most one reflector"),
        ("rate_cyclic_overrelaxed", "lambda_list in [1,2)^m, m >= 2, block m-1"),
        ("rate_cyclic_projections", "m >= 2 projectors, eps in [0,1)"),
        ("rate_convex_cyclic", "eps = 0, global on the start ball"),
        ("rate_cyclic_semi_intrepid", "alpha_list in [0,1]^m, at most one full step"),
        ("rate_cyclic_dr", "per-block quasi-firm constants + coercivity nu"),
    ],
}


def list_catalog(fmt="text") -> str:
    """Supported set variants, operators, and rate theorems."""
    if fmt == "json":
        payload = {
            section: [{"name": name, "params": desc} for name, desc in rows]
            for section, rows in _CATALOG.items()
        }
        return json.dumps(payload, indent=2, sort_keys=True)
    lines = []
    for section in ("sets", "operators", "theorems"):
        lines.append(f"{section}:")
        for name, desc in _CATALOG[section]:
            lines.append(f"  {name} ({desc})")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="projlab",
        description="Feasibility experiments: projection operators, sampled "
                    "regularity estimates, and R-linear rate certificates.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="execute one scenario config")
    p_run.add_argument("config", help="path to a scenario JSON file")
    p_run.add_argument("--out", default="out", help="output directory root")
    p_run.add_argument("--force", action="store_true",
                       help="overwrite existing output files")
    p_run.add_argument("--seed", type=int, default=None,
                       help="override the scenario seed")
    p_run.add_argument("--format", choices=("text", "json"), default="text")

    p_verify = sub.add_parser("verify", help="run the bundled scenario suite")
    p_verify.add_argument("--out", default=None, help="write per-scenario artifacts")
    p_verify.add_argument("--force", action="store_true",
                          help="overwrite existing output files")
    p_verify.add_argument("--seed", type=int, default=None,
                          help="override every scenario seed")
    p_verify.add_argument("--workers", type=int, default=None,
                          help="concurrent scenario cap")
    p_verify.add_argument("--format", choices=("text", "json"), default="text")

    p_cat = sub.add_parser("catalog", help="list sets, operators, theorems")
    p_cat.add_argument("--format", choices=("text", "json"), default="text")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    if args.command == "run":
        return run_scenario(args.config, out_root=args.out, force=args.force,
                            seed=args.seed, fmt=args.format)
    if args.command == "verify":
        if args.out and not args.force and os.path.isdir(args.out) \
                and os.listdir(args.out):
            print(f"output in {args.out} exists; use --force to overwrite",
                  file=sys.stderr)
            return 2
        summary = verify_suite(workers=args.workers, out_root=args.out,
                               seed=args.seed)
        if args.format == "json":
            print(json.dumps(summary, indent=2, sort_keys=True))
        else:
            print(_format_suite_text(summary))
        return 0 if summary["passed"] else 1
    if args.command == "catalog":
        print(list_catalog(args.format))
        return 0
    parser.error(f"unknown command {args.command!r}")  # pragma: no cover
    return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
