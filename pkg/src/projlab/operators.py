"""Projection-based fixed-point operators.

All operators act on a single point and return a new array; selections are
inherited from the canonical projections of the set catalog, so repeated
application replays exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, DomainError
from .sets import ClosedSet, as_vector


@dataclass(frozen=True, eq=False)
class RelaxedProjector:
    """x -> (1 - lam) x + lam P(x) with lam in (0, 2]; lam = 2 is the reflector."""

    target: ClosedSet
    lam: float

    def __post_init__(self):
        lam = float(self.lam)
        if not 0.0 < lam <= 2.0:
            raise DomainError(f"relaxation parameter must lie in (0, 2], got {lam}")
        object.__setattr__(self, "lam", lam)

    def apply(self, x):
        x = as_vector(x, self.target.dim)
        p = self.target.project(x).canonical
        return x + self.lam * (p - x)


@dataclass(frozen=True, eq=False)
class SemiIntrepidProjector:
    """x -> p + (p - x) * min(alpha, tau / ||p - x||), with p = P(x).

    At p = x the overshoot is empty and the operator returns p.
    """

    target: ClosedSet
    alpha: float
    tau: float

    def __post_init__(self):
        alpha = float(self.alpha)
        tau = float(self.tau)
        if not 0.0 <= alpha <= 1.0:
            raise DomainError(f"intrepidity parameter must lie in [0, 1], got {alpha}")
        if tau < 0.0:
            raise DomainError(f"injectability radius must be >= 0, got {tau}")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "tau", tau)

    def apply(self, x):
        x = as_vector(x, self.target.dim)
        p = self.target.project(x).canonical
        gap = float(np.linalg.norm(p - x))
        if gap == 0.0:
            return p.copy()
        return p + min(self.alpha, self.tau / gap) * (p - x)


@dataclass(frozen=True, eq=False)
class GeneralizedDR:
    """x -> (1 - alpha) x + alpha P_B^mu P_A^lam x.

    lam, mu in (0, 2]; alpha in (0, 1].  alpha = 1 degenerates to the plain
    composition of the two relaxed projectors.
    """

    set_a: ClosedSet
    set_b: ClosedSet
    lam: float
    mu: float
    alpha: float

    def __post_init__(self):
        if self.set_a.dim != self.set_b.dim:
            raise DomainError("DR operator needs two sets of equal dimension")
        for name in ("lam", "mu"):
            v = float(getattr(self, name))
            if not 0.0 < v <= 2.0:
                raise DomainError(f"{name} must lie in (0, 2], got {v}")
            object.__setattr__(self, name, v)
        alpha = float(self.alpha)
        if not 0.0 < alpha <= 1.0:
            raise DomainError(f"averaging parameter must lie in (0, 1], got {alpha}")
        object.__setattr__(self, "alpha", alpha)

    def apply_with_trace(self, x):
        """Return (r, s, out): the two relaxed steps and the averaged point."""
        x = as_vector(x, self.set_a.dim)
        pa = self.set_a.project(x).canonical
        r = x + self.lam * (pa - x)
        pb = self.set_b.project(r).canonical
        s = r + self.mu * (pb - r)
        return r, s, (1.0 - self.alpha) * x + self.alpha * s

    def apply(self, x):
        return self.apply_with_trace(x)[2]


@dataclass(frozen=True, eq=False)
class CyclicTuple:
    """A flat, nonempty tuple of operators applied in order (one full cycle)."""

    members: tuple

    def __post_init__(self):
        members = tuple(self.members)
        if not members:
            raise DomainError("cyclic tuple must be nonempty")
        if any(isinstance(m, CyclicTuple) for m in members):
            raise DomainError("cyclic tuples do not nest")
        object.__setattr__(self, "members", members)

    def apply(self, x):
        for op in self.members:
            x = op.apply(x)
        return x

    def __len__(self):
        return len(self.members)


def apply(op, x):
    """Apply any operator (CyclicTuple = one full cycle)."""
    return op.apply(x)


def reflect(s: ClosedSet, x):
    """R(x) = 2 P(x) - x."""
    return RelaxedProjector(s, 2.0).apply(x)


def semi_intrepid_effective_relaxation(x, p, alpha, tau) -> float:
    """Relaxation 1 + min(alpha, tau / ||x - p||) realised by a semi-intrepid step.

    Equals 1 when x = p (pure projection step).
    """
    gap = float(np.linalg.norm(as_vector(x) - as_vector(p)))
    if gap == 0.0:
        return 1.0
    return 1.0 + min(float(alpha), float(tau) / gap)


def operator_from_config(record: dict, sets) -> object:
    """Build an operator from a tagged record, resolving set indices."""
    if not isinstance(record, dict) or "type" not in record:
        raise ConfigError("operator record must be a dict with a 'type' tag")
    kind = record["type"]

    def pick(key):
        idx = record[key]
        if not isinstance(idx, int) or not 0 <= idx < len(sets):
            raise ConfigError(f"operator field '{key}' must index the scenario sets, got {idx!r}")
        return sets[idx]

    try:
        if kind == "relaxed":
            return RelaxedProjector(pick("set"), record["lambda"])
        if kind == "semi_intrepid":
            return SemiIntrepidProjector(pick("set"), record["alpha"], record["tau"])
        if kind == "generalized_dr":
            return GeneralizedDR(
                pick("set_a"), pick("set_b"), record["lambda"], record["mu"], record["alpha"]
            )
    except KeyError as exc:
        raise ConfigError(f"operator record '{kind}' is missing field {exc}") from exc
    raise ConfigError(f"unknown operator type '{kind}'")


def operator_to_config(op, sets) -> dict:
    """Serialize an operator back to its tagged record (set-index form)."""
    index = {id(s): i for i, s in enumerate(sets)}

    def ref(s):
        if id(s) not in index:
            raise ConfigError("operator references a set outside the scenario list")
        return index[id(s)]

    if isinstance(op, RelaxedProjector):
        return {"type": "relaxed", "set": ref(op.target), "lambda": op.lam}
    if isinstance(op, SemiIntrepidProjector):
        return {
            "type": "semi_intrepid",
            "set": ref(op.target),
            "alpha": op.alpha,
            "tau": op.tau,
        }
    if isinstance(op, GeneralizedDR):
        return {
            "type": "generalized_dr",
            "set_a": ref(op.set_a),
            "set_b": ref(op.set_b),
            "lambda": op.lam,
            "mu": op.mu,
            "alpha": op.alpha,
        }
    raise ConfigError(f"cannot serialize operator {type(op).__name__}")
