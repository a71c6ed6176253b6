"""Iteration driver, empirical rate fitting, and certificate comparison.

A trajectory records one point per operator application.  Cycle-end iterates
(every ``cycle_len``-th point) form the observable sequence used for rate
fitting and cycle detection; k-step reduction checks work in units of single
operator applications.  Certificates speak in blocks of single applications;
comparisons convert both sides to per-iterate rates before applying slack.
"""

from __future__ import annotations

import csv
import time
from dataclasses import dataclass, field

import numpy as np

from .analysis import PropertyReport
from .errors import CertificateViolated, DomainError, InsufficientData
from .intersection import IntersectionHandle
from .operators import CyclicTuple
from .rates import RateCertificate
from .sets import as_vector

DIVERGENCE_NORM = 1e12
ERROR_FLOOR = 1e-14


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Iterates of a cyclic operator tuple with per-point set distances."""

    points: np.ndarray          # (N+1, d); row 0 is x0
    op_index: np.ndarray        # (N+1,); -1 for x0, else operator position
    set_dists: np.ndarray       # (N+1, m) distance to each member set
    c_dist: np.ndarray          # (N+1,) distance to the intersection
    cycle_len: int
    stop_reason: str            # Converged | Budget | Diverged
    tol: float
    seed: int
    wall_time_s: float
    operators: CyclicTuple | None = None
    sets: tuple = field(default=())
    intersection: IntersectionHandle | None = None

    @property
    def n_points(self) -> int:
        return self.points.shape[0]

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    def cycle_end_indices(self) -> np.ndarray:
        return np.arange(0, self.n_points, self.cycle_len)

    def cycle_iterates(self) -> np.ndarray:
        return self.points[self.cycle_end_indices()]

    def cycle_errors(self) -> np.ndarray:
        """Distance to the intersection at each cycle end (x0 included)."""
        return self.c_dist[self.cycle_end_indices()]

    @property
    def n_cycles(self) -> int:
        return (self.n_points - 1) // self.cycle_len

    @property
    def final(self) -> np.ndarray:
        return self.points[-1]


def run(operators, x0, sets, intersection: IntersectionHandle,
        max_cycles=10_000, tol=1e-10, seed=0) -> Trajectory:
    """Iterate the cyclic tuple from x0 until the intersection distance at a
    cycle end drops to tol, the cycle budget runs out, or the iterate norm
    exceeds 1e12 (stop_reason Diverged, never an exception)."""
    cycle = operators if isinstance(operators, CyclicTuple) else CyclicTuple(operators)
    members = cycle.members
    x = as_vector(x0)
    sets = tuple(sets)
    if max_cycles < 1:
        raise DomainError("max_cycles must be >= 1")
    if not tol > 0.0:
        raise DomainError("tol must be > 0")
    t0 = time.perf_counter()
    points = [x.copy()]
    op_index = [-1]
    stop = "Budget"
    for _ in range(max_cycles):
        diverged = False
        for j, op in enumerate(members):
            x = op.apply(x)
            points.append(x.copy())
            op_index.append(j)
            if np.linalg.norm(x) > DIVERGENCE_NORM:
                diverged = True
                break
        if diverged:
            stop = "Diverged"
            break
        if intersection.distance(x) <= tol:
            stop = "Converged"
            break
    wall = time.perf_counter() - t0
    P = np.array(points)
    sd = np.array([[s.distance(p) for s in sets] for p in P]) if sets \
        else np.zeros((P.shape[0], 0))
    cd = np.array([intersection.distance(p) for p in P])
    return Trajectory(P, np.array(op_index, dtype=int), sd, cd,
                      len(members), stop, float(tol), int(seed), wall,
                      cycle, sets, intersection)


# ---------------------------------------------------------------------------
# rate fitting


@dataclass(frozen=True, eq=False)
class RateFit:
    """Least-squares R-linear fit log e_n = log sigma + n log rho."""

    rho: float
    sigma: float
    window: tuple          # (start, stop) indices into the error sequence
    n_points: int
    r_squared: float
    censored: int          # entries dropped for sitting at the error floor
    non_convergent: bool   # rho >= 1 after clamping


def fit_rlinear(errors, tail_fraction=0.5, burn_in=10,
                floor=ERROR_FLOOR) -> RateFit:
    """Fit a geometric envelope to an error sequence by log-linear least
    squares over the trailing window (after dropping the burn-in prefix);
    entries at or below the floor are censored.  Raises InsufficientData for
    sequences shorter than 10 or with fewer than 5 usable points."""
    e = np.asarray(errors, dtype=float)
    if e.ndim != 1:
        raise DomainError("errors must be a flat sequence")
    if np.any(e < 0.0):
        raise DomainError("errors must be nonnegative")
    if e.size < 10:
        raise InsufficientData(f"need at least 10 error entries, got {e.size}")
    if not 0.0 < tail_fraction <= 1.0:
        raise DomainError("tail_fraction must lie in (0, 1]")
    if burn_in < 0:
        raise DomainError("burn_in must be >= 0")
    burn_in = min(burn_in, e.size)
    idx = np.arange(e.size)[burn_in:]
    tail = e[burn_in:]
    start = idx.size - max(1, int(np.ceil(tail_fraction * idx.size)))
    idx = idx[start:]
    tail = tail[start:]
    keep = tail > floor
    censored = int(np.sum(~keep))
    idx = idx[keep]
    tail = tail[keep]
    if idx.size < 5:
        raise InsufficientData(
            f"only {idx.size} points above the floor in the fit window")
    logs = np.log(tail)
    A = np.column_stack([idx.astype(float), np.ones(idx.size)])
    coef, *_ = np.linalg.lstsq(A, logs, rcond=None)
    slope, intercept = coef
    pred = A @ coef
    ss_res = float(np.sum((logs - pred) ** 2))
    ss_tot = float(np.sum((logs - logs.mean()) ** 2))
    r2 = 1.0 if ss_tot == 0.0 else 1.0 - ss_res / ss_tot
    rho = float(np.exp(slope))
    rho = min(max(rho, 0.0), 1.5)
    return RateFit(rho, float(np.exp(intercept)),
                   (int(idx[0]), int(idx[-1]) + 1), int(idx.size), r2,
                   censored, rho >= 1.0)


# ---------------------------------------------------------------------------
# trajectory checks


@dataclass(frozen=True, eq=False)
class CycleReport:
    """A periodic state recurrence in the raw application sequence."""

    period: int             # in single operator applications
    start_index: int        # first point index of the periodic tail
    states: np.ndarray      # (period, d): one full period, in visit order
    max_deviation: float


def detect_cycle(traj: Trajectory, max_period=8, tol=1e-12) -> CycleReport | None:
    """Find the smallest period p (in single applications) such that the
    point sequence satisfies x[n + p] == x[n] within tol from some start
    index onward, with at least two full periods observed."""
    y = traj.points
    n = y.shape[0]
    for p in range(1, max_period + 1):
        if n < 2 * p + 1:
            break
        gaps = np.linalg.norm(y[p:] - y[:-p], axis=1)
        bad = np.nonzero(gaps > tol)[0]
        s = 0 if bad.size == 0 else int(bad[-1]) + 1
        if (n - 1) - s >= 2 * p:
            dev = float(np.max(gaps[s:])) if gaps[s:].size else 0.0
            return CycleReport(p, s, y[s:s + p].copy(), dev)
    return None


def check_k_step_reduction(traj: Trajectory, k, rho_bound, ball=None,
                           check_tol=1e-12) -> PropertyReport:
    """Verify d_C(x_{k(n+1)}) <= rho_bound * d_C(x_{kn}) + check_tol over
    k-step blocks of single operator applications.

    Blocks whose start sits at the error floor pass trivially; if `ball` is a
    (center, radius) pair, blocks starting outside it are skipped (the
    certificate makes no claim there) and counted in extra["outside_ball"].
    """
    if k < 1:
        raise DomainError("k must be >= 1")
    if traj.n_points - 1 < 2 * k:
        raise DomainError("trajectory must contain at least 2k applications")
    e = traj.c_dist
    center = radius = None
    if ball is not None:
        center, radius = as_vector(ball[0]), float(ball[1])
    violations = 0
    worst = np.inf
    worst_ratio = 0.0
    witness = None
    checked = 0
    skipped = 0
    n = 0
    while (n + 1) * k < e.size:
        i0, i1 = n * k, (n + 1) * k
        n += 1
        if center is not None and \
                np.linalg.norm(traj.points[i0] - center) > radius + check_tol:
            skipped += 1
            continue
        checked += 1
        if e[i0] <= ERROR_FLOOR:
            continue
        margin = rho_bound * e[i0] - e[i1]
        worst_ratio = max(worst_ratio, e[i1] / e[i0])
        if margin < worst:
            worst = margin
            witness = (i0, float(e[i0]), float(e[i1]))
        if margin < -check_tol:
            violations += 1
    if not np.isfinite(worst):
        worst = 0.0
    return PropertyReport("k_step_reduction", checked, violations,
                          float(worst), witness, traj.seed, check_tol,
                          {"k": k, "rho_bound": float(rho_bound),
                           "worst_ratio": worst_ratio,
                           "outside_ball": skipped})


def check_fejer_trace(traj: Trajectory, constants, xbar,
                      check_tol=1e-9) -> PropertyReport:
    """Verify the quasi-firm inequality along consecutive trajectory points.

    `constants` is one (gamma, beta) pair applied to every step, or a list of
    per-phase pairs matching the cycle length.
    """
    xbar = as_vector(xbar)
    if isinstance(constants, (tuple, list)) and len(constants) == 2 \
            and np.isscalar(constants[0]):
        table = [(float(constants[0]), float(constants[1]))] * traj.cycle_len
    else:
        table = [(float(g), float(b)) for g, b in constants]
        if len(table) != traj.cycle_len:
            raise DomainError("need one (gamma, beta) pair per cycle phase")
    violations = 0
    worst = np.inf
    witness = None
    P = traj.points
    for n in range(P.shape[0] - 1):
        gamma, beta = table[traj.op_index[n + 1]]
        x, xp = P[n], P[n + 1]
        margin = (gamma * float(np.dot(x - xbar, x - xbar))
                  - float(np.dot(xp - xbar, xp - xbar))
                  - beta * float(np.dot(x - xp, x - xp)))
        if margin < worst:
            worst = margin
            witness = (n, x, xp)
        if margin < -check_tol:
            violations += 1
    return PropertyReport("fejer_trace", P.shape[0] - 1, violations,
                          float(worst), witness, traj.seed, check_tol, {})


def check_rlinear_envelope(traj: Trajectory, cert: RateCertificate,
                           xbar=None, w=None, start_radius=None,
                           check_tol=1e-9) -> PropertyReport:
    """Verify ||x_n - xbar|| <= prefactor * sigma * rho_block^floor(n/k) along
    the trajectory, with sigma built from d_C(x0).

    xbar defaults to the final iterate (proxy; its intersection distance is
    reported as xbar_quality).  If w and start_radius are given, iterates
    leaving B(w, start_radius) set the left_ball flag without failing.
    """
    if not cert.applicable:
        raise DomainError("certificate is not applicable (rho_block >= 1)")
    xbar = traj.final if xbar is None else as_vector(xbar)
    d0 = float(traj.c_dist[0])
    sigma = cert.start_prefactor * cert.sigma(d0)
    k = cert.block_len
    violations = 0
    worst = np.inf
    witness = None
    left_ball = False
    for n in range(traj.n_points):
        env = sigma * cert.rho_block ** (n // k)
        err = float(np.linalg.norm(traj.points[n] - xbar))
        margin = env - err
        if margin < worst:
            worst = margin
            witness = (n, err, env)
        if margin < -check_tol:
            violations += 1
        if w is not None and start_radius is not None:
            if np.linalg.norm(traj.points[n] - as_vector(w)) > start_radius + check_tol:
                left_ball = True
    return PropertyReport("rlinear_envelope", traj.n_points, violations,
                          float(worst), witness, traj.seed, check_tol,
                          {"sigma": sigma, "rho_block": cert.rho_block,
                           "block_len": k, "left_ball": left_ball,
                           "xbar_quality": float(traj.c_dist[-1])})


def compare_certificate(traj: Trajectory, cert: RateCertificate, slack=0.02,
                        tail_fraction=0.5, burn_in=10,
                        raise_on_violation=True) -> dict:
    """Compare the fitted contraction against the certificate.

    The cycle-end error sequence is fitted and converted to a per-iterate
    (single application) rate, which must not exceed the certified
    per-iterate rate plus `slack`.  Finite convergence (all errors at the
    floor) passes trivially; a certificate that is not applicable makes no
    claim and the comparison is vacuous.
    """
    result = {
        "theorem": cert.theorem,
        "applicable": cert.applicable,
        "slack": float(slack),
        "vacuous": False,
        "finite_convergence": False,
        "ok": True,
        "rho_fit_per_cycle": None,
        "rho_fit_per_iterate": None,
        "rho_cert_per_iterate": float(cert.rho_per_iterate),
        "rho_block": cert.rho_block,
        "block_len": cert.block_len,
    }
    if not cert.applicable:
        result["vacuous"] = True
        return result
    try:
        fit = fit_rlinear(traj.cycle_errors(), tail_fraction=tail_fraction,
                          burn_in=burn_in)
    except InsufficientData:
        if traj.c_dist[-1] <= traj.tol:
            result["finite_convergence"] = True
            result["rho_fit_per_cycle"] = 0.0
            result["rho_fit_per_iterate"] = 0.0
            result["margin"] = float(cert.rho_per_iterate + slack)
            return result
        raise
    rho_iter_fit = fit.rho ** (1.0 / traj.cycle_len)
    result["rho_fit_per_cycle"] = fit.rho
    result["rho_fit_per_iterate"] = float(rho_iter_fit)
    result["fit_r_squared"] = fit.r_squared
    result["fit_points"] = fit.n_points
    result["non_convergent_fit"] = fit.non_convergent
    result["margin"] = float(cert.rho_per_iterate + slack - rho_iter_fit)
    result["ok"] = rho_iter_fit <= cert.rho_per_iterate + slack
    if not result["ok"] and raise_on_violation:
        raise CertificateViolated(
            f"fitted per-iterate rate {rho_iter_fit:.6f} exceeds certified "
            f"{cert.rho_per_iterate:.6f} + slack {slack}")
    return result


# ---------------------------------------------------------------------------
# CSV export


def export_trajectory_csv(traj: Trajectory, path) -> None:
    """Write the trajectory as RFC-4180 CSV with 17 significant digits.

    Columns: n, op_index, x_1..x_d, dC_1..dC_m, dC.
    """
    d = traj.dim
    m = traj.set_dists.shape[1]
    header = (["n", "op_index"]
              + [f"x_{i + 1}" for i in range(d)]
              + [f"dC_{j + 1}" for j in range(m)]
              + ["dC"])
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\r\n")
        writer.writerow(header)
        for n in range(traj.n_points):
            row = [str(n), str(int(traj.op_index[n]))]
            row += ["%.17g" % v for v in traj.points[n]]
            row += ["%.17g" % v for v in traj.set_dists[n]]
            row.append("%.17g" % traj.c_dist[n])
            writer.writerow(row)
