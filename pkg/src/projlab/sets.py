"""Closed-set catalog: membership, projection, distance and normal-cone oracles.

Every variant describes a nonempty closed subset of R^d exactly.  Projections
return the full nearest-point set whenever it is enumerable, together with a
deterministic canonical selection, so operators built on the catalog replay
bit-identically.  Multivalued ties are broken by the lexicographically
smallest coordinate vector unless a variant documents its own rule
(UnionOfSets prefers the lowest member index, Sphere at its center returns
center + radius * e1).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import nnls

from .errors import DimensionMismatch, DomainError, UnsupportedSet

MEMBERSHIP_TOL = 1e-10
TIE_TOL = 1e-12

# Cone feasibility tolerance used by the face-enumeration projector.
_CONE_FEAS_TOL = 1e-9


def as_vector(x, dim=None) -> np.ndarray:
    """Validate and convert `x` to a finite 1-D float array."""
    v = np.asarray(x, dtype=float)
    if v.ndim != 1:
        raise DimensionMismatch(f"expected a 1-D vector, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise DomainError("vector entries must be finite")
    if dim is not None and v.size != dim:
        raise DimensionMismatch(f"expected dimension {dim}, got {v.size}")
    return v


def _lex_min(points):
    """Lexicographically smallest vector of a nonempty list."""
    best = points[0]
    for p in points[1:]:
        if tuple(p) < tuple(best):
            best = p
    return best


def _dedupe(points, tol=TIE_TOL):
    out = []
    for p in points:
        if not any(np.max(np.abs(p - q)) <= tol for q in out):
            out.append(p)
    return out


@dataclass(frozen=True, eq=False)
class ProjectionResult:
    """Outcome of projecting a point onto a catalog set.

    `canonical` is the deterministic selection, `minimizers` the full
    nearest-point set when enumerable (always containing `canonical`),
    `distance` the Euclidean distance attained by every minimizer.
    """

    canonical: np.ndarray
    minimizers: tuple
    multivalued: bool
    distance: float


@dataclass(frozen=True, eq=False)
class NormalSample:
    """A unit proximal-normal direction attached to its base point."""

    base: np.ndarray
    direction: np.ndarray


class ClosedSet:
    """Base class for catalog sets; subclasses fill in `project`."""

    dim: int

    def project(self, x) -> ProjectionResult:
        raise NotImplementedError

    def distance(self, x) -> float:
        return self.project(x).distance

    def contains(self, x, tol=MEMBERSHIP_TOL) -> bool:
        return self.distance(x) <= tol

    def normal_generators(self, p, max_count=8):
        """Unit generators of the proximal normal cone at a member point p."""
        raise UnsupportedSet(f"{type(self).__name__} has no closed-form normal cone")

    def to_config(self) -> dict:
        raise NotImplementedError

    def _single(self, x, p) -> ProjectionResult:
        p = np.asarray(p, dtype=float)
        return ProjectionResult(p, (p,), False, float(np.linalg.norm(x - p)))


# ---------------------------------------------------------------------------
# affine-flavoured variants


@dataclass(frozen=True, eq=False)
class Halfspace(ClosedSet):
    """{x : <a, x> <= b} with a != 0."""

    a: np.ndarray
    b: float

    def __post_init__(self):
        a = as_vector(self.a)
        if np.linalg.norm(a) == 0.0:
            raise DomainError("halfspace normal must be nonzero")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", float(self.b))
        object.__setattr__(self, "dim", a.size)

    def project(self, x):
        x = as_vector(x, self.dim)
        excess = float(self.a @ x - self.b)
        if excess <= 0.0:
            return self._single(x, x)
        p = x - (excess / float(self.a @ self.a)) * self.a
        return self._single(x, p)

    def normal_generators(self, p, max_count=8):
        p = as_vector(p, self.dim)
        na = float(np.linalg.norm(self.a))
        if self.a @ p - self.b < -MEMBERSHIP_TOL * max(1.0, na):
            return []  # interior: zero cone
        return [NormalSample(p, self.a / na)]

    def to_config(self):
        return {"type": "halfspace", "a": self.a.tolist(), "b": self.b}


@dataclass(frozen=True, eq=False)
class Hyperplane(ClosedSet):
    """{x : <a, x> = b} with a != 0."""

    a: np.ndarray
    b: float

    def __post_init__(self):
        a = as_vector(self.a)
        if np.linalg.norm(a) == 0.0:
            raise DomainError("hyperplane normal must be nonzero")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", float(self.b))
        object.__setattr__(self, "dim", a.size)

    def project(self, x):
        x = as_vector(x, self.dim)
        offset = float(self.a @ x - self.b)
        p = x - (offset / float(self.a @ self.a)) * self.a
        return self._single(x, p)

    def normal_generators(self, p, max_count=8):
        p = as_vector(p, self.dim)
        u = self.a / float(np.linalg.norm(self.a))
        return [NormalSample(p, u), NormalSample(p, -u)]

    def to_config(self):
        return {"type": "hyperplane", "a": self.a.tolist(), "b": self.b}


def _orthonormal_complement(basis, dim):
    """Orthonormal basis of the orthogonal complement of the row space."""
    if basis.shape[0] == 0:
        return np.eye(dim)
    _, s, vt = np.linalg.svd(np.vstack([basis, np.zeros((0, dim))]), full_matrices=True)
    rank = int(np.sum(s > 1e-12 * max(1.0, s[0] if s.size else 1.0)))
    return vt[rank:]


@dataclass(frozen=True, eq=False)
class AffineSubspaceSet(ClosedSet):
    """anchor + span(basis rows); basis rows orthonormal, possibly empty."""

    anchor: np.ndarray
    basis: np.ndarray

    def __post_init__(self):
        anchor = as_vector(self.anchor)
        basis = np.asarray(self.basis, dtype=float)
        if basis.size == 0:
            basis = np.zeros((0, anchor.size))
        if basis.ndim != 2 or basis.shape[1] != anchor.size:
            raise DimensionMismatch("basis rows must match anchor dimension")
        gram = basis @ basis.T
        if basis.shape[0] and np.max(np.abs(gram - np.eye(basis.shape[0]))) > 1e-10:
            raise DomainError("basis rows must be orthonormal")
        object.__setattr__(self, "anchor", anchor)
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "dim", anchor.size)

    @property
    def subspace_dim(self) -> int:
        return self.basis.shape[0]

    def project(self, x):
        x = as_vector(x, self.dim)
        delta = x - self.anchor
        p = self.anchor + self.basis.T @ (self.basis @ delta)
        return self._single(x, p)

    def normal_generators(self, p, max_count=8):
        p = as_vector(p, self.dim)
        comp = _orthonormal_complement(self.basis, self.dim)
        out = []
        for row in comp:
            out.append(NormalSample(p, row.copy()))
            out.append(NormalSample(p, -row))
        return out[:max_count] if max_count is not None else out

    def to_config(self):
        return {
            "type": "affine",
            "anchor": self.anchor.tolist(),
            "basis": self.basis.tolist(),
        }


# ---------------------------------------------------------------------------
# balls, spheres, boxes


@dataclass(frozen=True, eq=False)
class Ball(ClosedSet):
    center: np.ndarray
    radius: float

    def __post_init__(self):
        c = as_vector(self.center)
        r = float(self.radius)
        if r < 0.0:
            raise DomainError("ball radius must be >= 0")
        object.__setattr__(self, "center", c)
        object.__setattr__(self, "radius", r)
        object.__setattr__(self, "dim", c.size)

    def project(self, x):
        x = as_vector(x, self.dim)
        gap = x - self.center
        dist = float(np.linalg.norm(gap))
        if dist <= self.radius:
            return self._single(x, x)
        p = self.center + (self.radius / dist) * gap
        return self._single(x, p)

    def normal_generators(self, p, max_count=8):
        p = as_vector(p, self.dim)
        if self.radius == 0.0:
            raise UnsupportedSet("degenerate ball: use FinitePointSet for a point")
        rr = float(np.linalg.norm(p - self.center))
        if rr < self.radius - MEMBERSHIP_TOL:
            return []
        return [NormalSample(p, (p - self.center) / rr)]

    def to_config(self):
        return {"type": "ball", "center": self.center.tolist(), "radius": self.radius}


@dataclass(frozen=True, eq=False)
class Sphere(ClosedSet):
    center: np.ndarray
    radius: float

    def __post_init__(self):
        c = as_vector(self.center)
        r = float(self.radius)
        if r <= 0.0:
            raise DomainError("sphere radius must be > 0")
        object.__setattr__(self, "center", c)
        object.__setattr__(self, "radius", r)
        object.__setattr__(self, "dim", c.size)

    def project(self, x):
        x = as_vector(x, self.dim)
        gap = x - self.center
        dist = float(np.linalg.norm(gap))
        if dist <= TIE_TOL:
            # every sphere point minimizes; canonical ray is +e1
            canon = self.center.copy()
            canon[0] += self.radius
            return ProjectionResult(canon, (canon,), True, self.radius)
        p = self.center + (self.radius / dist) * gap
        return self._single(x, p)

    def normal_generators(self, p, max_count=8):
        p = as_vector(p, self.dim)
        u = (p - self.center) / float(np.linalg.norm(p - self.center))
        return [NormalSample(p, u), NormalSample(p, -u)]

    def to_config(self):
        return {"type": "sphere", "center": self.center.tolist(), "radius": self.radius}


@dataclass(frozen=True, eq=False)
class Box(ClosedSet):
    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self):
        lo = as_vector(self.lower)
        hi = as_vector(self.upper, lo.size)
        if np.any(lo > hi):
            raise DomainError("box lower bound exceeds upper bound")
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", hi)
        object.__setattr__(self, "dim", lo.size)

    def project(self, x):
        x = as_vector(x, self.dim)
        return self._single(x, np.clip(x, self.lower, self.upper))

    def normal_generators(self, p, max_count=8):
        p = as_vector(p, self.dim)
        out = []
        for i in range(self.dim):
            e = np.zeros(self.dim)
            if p[i] >= self.upper[i] - MEMBERSHIP_TOL:
                e[i] = 1.0
                out.append(NormalSample(p, e.copy()))
            if p[i] <= self.lower[i] + MEMBERSHIP_TOL:
                e[i] = -1.0
                out.append(NormalSample(p, e))
        return out[:max_count] if max_count is not None else out

    def to_config(self):
        return {"type": "box", "lower": self.lower.tolist(), "upper": self.upper.tolist()}


# ---------------------------------------------------------------------------
# cones


@dataclass(frozen=True, eq=False)
class Orthant(ClosedSet):
    """Sign-pattern orthant {x : s_i * x_i >= 0 for s_i != 0}.

    A sign of 0 leaves the coordinate unconstrained.
    """

    signs: tuple

    def __post_init__(self):
        signs = tuple(int(s) for s in self.signs)
        if not signs:
            raise DomainError("orthant needs at least one coordinate")
        if any(s not in (-1, 0, 1) for s in signs):
            raise DomainError("orthant signs must be -1, 0 or +1")
        object.__setattr__(self, "signs", signs)
        object.__setattr__(self, "dim", len(signs))

    def project(self, x):
        x = as_vector(x, self.dim)
        p = x.copy()
        for i, s in enumerate(self.signs):
            if s != 0 and s * p[i] < 0.0:
                p[i] = 0.0
        return self._single(x, p)

    def normal_generators(self, p, max_count=8):
        p = as_vector(p, self.dim)
        out = []
        for i, s in enumerate(self.signs):
            if s != 0 and abs(p[i]) <= MEMBERSHIP_TOL:
                e = np.zeros(self.dim)
                e[i] = -float(s)
                out.append(NormalSample(p, e))
        return out[:max_count] if max_count is not None else out

    def cone_generators(self) -> np.ndarray:
        """Generating rays of the orthant as a convex cone."""
        rows = []
        for i, s in enumerate(self.signs):
            e = np.zeros(self.dim)
            if s == 0:
                e[i] = 1.0
                rows.append(e.copy())
                e[i] = -1.0
                rows.append(e)
            else:
                e[i] = float(s)
                rows.append(e)
        return np.array(rows)

    def to_config(self):
        return {"type": "orthant", "signs": list(self.signs)}


def _inequality_cone_generators(M, tol=1e-9):
    """Generating unit rays of {v : M v <= 0}, including +/- lineality basis.

    Subset enumeration of active constraints; intended for desk-scale cones
    (dimension <= 4, a handful of rows).
    """
    M = np.asarray(M, dtype=float)
    d = M.shape[1]
    # lineality space = null(M)
    if M.shape[0]:
        _, s, vt = np.linalg.svd(M)
        rank = int(np.sum(s > tol * max(1.0, s[0])))
        lin = vt[rank:]
    else:
        lin = np.eye(d)
    rays = [row for b in lin for row in (b, -b)]
    if lin.shape[0] == d:
        return _dedupe(rays, 1e-9)
    # pointed part lives in the orthogonal complement of the lineality space
    Q = _orthonormal_complement(lin, d) if lin.shape[0] else np.eye(d)
    dprime = Q.shape[0]
    Mp = M @ Q.T
    found = []
    size = max(0, dprime - 1)
    for rows in itertools.combinations(range(Mp.shape[0]), size):
        A = Mp[list(rows)]
        if size == 0:
            null = np.eye(dprime)
        else:
            _, s, vt = np.linalg.svd(np.vstack([A, np.zeros((0, dprime))]), full_matrices=True)
            rank = int(np.sum(s > tol * max(1.0, s[0] if s.size else 1.0)))
            null = vt[rank:]
        if null.shape[0] != 1:
            continue
        for sign in (1.0, -1.0):
            w = sign * null[0]
            if np.all(Mp @ w <= tol):
                found.append(Q.T @ w)
    rays.extend(found)
    rays = [r / np.linalg.norm(r) for r in rays if np.linalg.norm(r) > tol]
    return _dedupe(rays, 1e-9)


@dataclass(frozen=True, eq=False)
class PolyhedralCone(ClosedSet):
    """Finitely generated cone {sum t_i g_i : t_i >= 0}.

    Projection enumerates faces: for each generator subset, project onto its
    span and keep feasible candidates.  Exact at desk scale (few generators,
    low dimension); no QP solver involved beyond a nonnegative least-squares
    membership oracle.
    """

    generators: np.ndarray

    def __post_init__(self):
        g = np.asarray(self.generators, dtype=float)
        if g.ndim != 2 or g.shape[0] == 0:
            raise DimensionMismatch("generators must be a nonempty (k, d) array")
        if not np.all(np.isfinite(g)):
            raise DomainError("generators must be finite")
        norms = np.linalg.norm(g, axis=1)
        if np.any(norms == 0.0):
            raise DomainError("zero generator ray")
        if g.shape[0] > 12:
            raise DomainError("face enumeration supports at most 12 generators")
        object.__setattr__(self, "generators", g)
        object.__setattr__(self, "dim", g.shape[1])

    def member_coefficients(self, q, tol=_CONE_FEAS_TOL):
        """Nonnegative coefficients writing q as a conic combination, or None."""
        q = as_vector(q, self.dim)
        coeff, resid = nnls(self.generators.T, q)
        if resid <= tol * (1.0 + np.linalg.norm(q)):
            return coeff
        return None

    def project(self, x):
        x = as_vector(x, self.dim)
        k, d = self.generators.shape
        best_dist = float(np.linalg.norm(x))  # empty face: the apex
        best_q = np.zeros(d)
        for size in range(1, min(k, d) + 1):
            for subset in itertools.combinations(range(k), size):
                G = self.generators[list(subset)].T
                coef, *_ = np.linalg.lstsq(G, x, rcond=None)
                q = G @ coef
                dist = float(np.linalg.norm(x - q))
                if dist < best_dist - 1e-15 and self.member_coefficients(q) is not None:
                    best_dist = dist
                    best_q = q
        return self._single(x, best_q)

    def normal_generators(self, p, max_count=8):
        if self.dim > 3:
            raise UnsupportedSet("cone normal enumeration supports dimension <= 3")
        p = as_vector(p, self.dim)
        rows = [self.generators]
        if np.linalg.norm(p) > MEMBERSHIP_TOL:
            rows.append(p[None, :])
            rows.append(-p[None, :])
        M = np.vstack(rows)
        rays = _inequality_cone_generators(M)
        out = [NormalSample(p, r) for r in rays]
        return out[:max_count] if max_count is not None else out

    def polar_generators(self):
        """Generating unit rays of the polar cone {v : <v, g_i> <= 0}."""
        return _inequality_cone_generators(self.generators)

    def to_config(self):
        return {"type": "cone", "generators": self.generators.tolist()}


# ---------------------------------------------------------------------------
# derived variants


@dataclass(frozen=True, eq=False)
class Enlargement(ClosedSet):
    """inner + closed ball of radius tau: {x : dist(x, inner) <= tau}."""

    inner: ClosedSet
    tau: float

    def __post_init__(self):
        if float(self.tau) < 0.0:
            raise DomainError("enlargement radius must be >= 0")
        object.__setattr__(self, "tau", float(self.tau))
        object.__setattr__(self, "dim", self.inner.dim)

    def project(self, x):
        x = as_vector(x, self.dim)
        if self.tau == 0.0:
            return self.inner.project(x)
        res = self.inner.project(x)
        if res.distance <= self.tau:
            return self._single(x, x)
        scale = self.tau / res.distance
        mapped = tuple(q + scale * (x - q) for q in res.minimizers)
        canon = res.canonical + scale * (x - res.canonical)
        return ProjectionResult(canon, mapped, res.multivalued, res.distance - self.tau)

    def normal_generators(self, p, max_count=8):
        p = as_vector(p, self.dim)
        if self.tau == 0.0:
            return self.inner.normal_generators(p, max_count)
        res = self.inner.project(p)
        if res.distance < self.tau - MEMBERSHIP_TOL:
            return []  # interior: zero cone
        out = []
        for q in res.minimizers:
            u = p - q
            nu = float(np.linalg.norm(u))
            if nu > TIE_TOL:
                out.append(NormalSample(p, u / nu))
        return out[:max_count] if max_count is not None else out

    def to_config(self):
        return {"type": "enlargement", "inner": self.inner.to_config(), "tau": self.tau}


@dataclass(frozen=True, eq=False)
class UnionOfSets(ClosedSet):
    """Finite union; ties within TIE_TOL resolve to the lowest member index."""

    members: tuple

    def __post_init__(self):
        members = tuple(self.members)
        if not members:
            raise DomainError("union needs at least one member")
        dims = {m.dim for m in members}
        if len(dims) != 1:
            raise DimensionMismatch("union members disagree on dimension")
        object.__setattr__(self, "members", members)
        object.__setattr__(self, "dim", members[0].dim)

    def project(self, x):
        x = as_vector(x, self.dim)
        results = [m.project(x) for m in self.members]
        dmin = min(r.distance for r in results)
        tied = [r for r in results if r.distance <= dmin + TIE_TOL]
        minimizers = _dedupe([q for r in tied for q in r.minimizers])
        canon = tied[0].canonical
        multi = len(minimizers) > 1 or any(r.multivalued for r in tied)
        return ProjectionResult(canon, tuple(minimizers), multi, dmin)

    def to_config(self):
        return {"type": "union", "members": [m.to_config() for m in self.members]}


@dataclass(frozen=True, eq=False)
class FinitePointSet(ClosedSet):
    points: np.ndarray

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim != 2 or pts.shape[0] == 0:
            raise DimensionMismatch("points must be a nonempty (n, d) array")
        if not np.all(np.isfinite(pts)):
            raise DomainError("points must be finite")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "dim", pts.shape[1])

    def project(self, x):
        x = as_vector(x, self.dim)
        dists = np.linalg.norm(self.points - x, axis=1)
        dmin = float(dists.min())
        tied = _dedupe([self.points[i].copy() for i in np.flatnonzero(dists <= dmin + TIE_TOL)])
        canon = _lex_min(tied)
        return ProjectionResult(canon, tuple(tied), len(tied) > 1, dmin)

    def to_config(self):
        return {"type": "finite_points", "points": self.points.tolist()}


@dataclass(frozen=True, eq=False)
class Translate(ClosedSet):
    """inner + shift."""

    inner: ClosedSet
    shift: np.ndarray

    def __post_init__(self):
        shift = as_vector(self.shift, self.inner.dim)
        object.__setattr__(self, "shift", shift)
        object.__setattr__(self, "dim", self.inner.dim)

    def project(self, x):
        x = as_vector(x, self.dim)
        res = self.inner.project(x - self.shift)
        mapped = tuple(q + self.shift for q in res.minimizers)
        return ProjectionResult(res.canonical + self.shift, mapped, res.multivalued, res.distance)

    def normal_generators(self, p, max_count=8):
        p = as_vector(p, self.dim)
        inner = self.inner.normal_generators(p - self.shift, max_count)
        return [NormalSample(p, n.direction) for n in inner]

    def to_config(self):
        return {"type": "translate", "inner": self.inner.to_config(), "shift": self.shift.tolist()}


# ---------------------------------------------------------------------------
# module-level operation surface


def membership(s: ClosedSet, x, tol=MEMBERSHIP_TOL) -> bool:
    return s.contains(x, tol)


def project(s: ClosedSet, x) -> ProjectionResult:
    return s.project(x)


def distance(s: ClosedSet, x) -> float:
    return s.distance(x)


def proximal_normals(s: ClosedSet, p, max_count=8):
    """Up to max_count unit generators of the proximal normal cone at p.

    p must belong to s (loose tolerance 1e-8 to absorb projection rounding).
    """
    if not s.contains(p, 1e-8):
        raise DomainError("normal cone requested at a point outside the set")
    return s.normal_generators(p, max_count)


def _cone_parts(s):
    """(cone descriptor, generator matrix) for obtuseness checks."""
    if isinstance(s, Translate):
        return _cone_parts(s.inner)
    if isinstance(s, Orthant):
        return s, s.cone_generators()
    if isinstance(s, PolyhedralCone):
        return s, s.generators
    raise UnsupportedSet("obtuseness is defined for Orthant/PolyhedralCone variants")


def is_obtuse_cone(s: ClosedSet, samples=256, seed=0):
    """Sampled check of -polar(K) c K (obtuse cone).

    Directions are drawn from the polar cone: its generating rays, random
    conic combinations of them, and (in dimension <= 3) a grid filtered to
    the polar.  Returns a PropertyReport-like dict; violations count sampled
    polar directions v with -v outside K.
    """
    cone, gens = _cone_parts(s)
    if isinstance(cone, Orthant):
        polar_rays = [-r for r in cone.cone_generators()]
    else:
        if cone.dim > 4:
            raise UnsupportedSet("polar enumeration supports dimension <= 4")
        polar_rays = cone.polar_generators()
    rng = np.random.default_rng(seed)
    directions = [np.asarray(r, dtype=float) for r in polar_rays]
    if directions:
        R = np.array(directions)
        coeffs = rng.random((samples, len(directions)))
        for c in coeffs:
            v = c @ R
            n = np.linalg.norm(v)
            if n > 1e-12:
                directions.append(v / n)
    violations = 0
    worst = np.inf
    witness = None
    for v in directions:
        d = cone.distance(-v)
        margin = -d
        if margin < worst:
            worst = margin
            witness = -v
        if d > 1e-9:
            violations += 1
    if not directions:
        worst = 0.0
    return {
        "name": "is_obtuse_cone",
        "samples": len(directions),
        "violations": violations,
        "worst_margin": float(worst),
        "witness": witness,
        "seed": seed,
        "obtuse": violations == 0,
    }


_VARIANTS = {}


def set_from_config(cfg: dict) -> ClosedSet:
    """Build a catalog set from its tagged-record form."""
    from .errors import ConfigError

    if not isinstance(cfg, dict) or "type" not in cfg:
        raise ConfigError("set record must be a dict with a 'type' tag")
    kind = cfg["type"]
    try:
        if kind == "halfspace":
            return Halfspace(cfg["a"], cfg["b"])
        if kind == "hyperplane":
            return Hyperplane(cfg["a"], cfg["b"])
        if kind == "affine":
            return AffineSubspaceSet(cfg["anchor"], cfg["basis"])
        if kind == "ball":
            return Ball(cfg["center"], cfg["radius"])
        if kind == "sphere":
            return Sphere(cfg["center"], cfg["radius"])
        if kind == "box":
            return Box(cfg["lower"], cfg["upper"])
        if kind == "orthant":
            return Orthant(tuple(cfg["signs"]))
        if kind == "cone":
            return PolyhedralCone(cfg["generators"])
        if kind == "enlargement":
            return Enlargement(set_from_config(cfg["inner"]), cfg["tau"])
        if kind == "union":
            return UnionOfSets(tuple(set_from_config(m) for m in cfg["members"]))
        if kind == "finite_points":
            return FinitePointSet(cfg["points"])
        if kind == "translate":
            return Translate(set_from_config(cfg["inner"]), cfg["shift"])
    except KeyError as exc:
        raise ConfigError(f"set record '{kind}' is missing field {exc}") from exc
    raise ConfigError(f"unknown set type '{kind}'")
