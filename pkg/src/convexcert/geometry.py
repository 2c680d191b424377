"""Membership, interiority and separation oracles for the origin.

All decisions are made on the point set rescaled by its largest point norm,
so tolerances are relative and every verdict is invariant under uniform
positive scaling.  Certificates are reported in the caller's coordinates and
are always re-verified from raw dot products before being returned.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import (
    InconsistentVerdict,
    InputError,
    NoConvergence,
    RankAmbiguous,
    ToleranceAmbiguous,
)
from .lp import EQ, GE, LpProblem, LpStatus, lp_solve
from .numerics import RANK_RTOL, numerical_rank

MEMBERSHIP_TOL = 1e-9
INTERIOR_TOL = 1e-9
SEPARATION_TOL = 1e-9
# Wolfe's stopping rule: <x, p_j> >= |x|^2 - WOLFE_TOL (unit-scaled points).
WOLFE_TOL = 1e-12
_WEIGHT_EPS = 1e-14


@dataclass(frozen=True)
class PointSet:
    dim: int
    points: np.ndarray  # shape (n, dim); row i is v_i

    def __post_init__(self):
        pts = np.array(self.points, dtype=float)
        if pts.ndim == 1 and self.dim == 1:
            pts = pts.reshape(-1, 1)
        if pts.size == 0:
            pts = pts.reshape(0, self.dim)
        if self.dim < 1:
            raise InputError("dimension must be at least 1")
        if pts.ndim != 2 or pts.shape[1] != self.dim:
            raise InputError(f"every point must have {self.dim} coordinates")
        if not np.all(np.isfinite(pts)):
            raise InputError("point coordinates must be finite")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    @classmethod
    def of(cls, points) -> "PointSet":
        pts = np.array(points, dtype=float)
        if pts.ndim == 1:
            pts = pts.reshape(-1, 1)
        return cls(pts.shape[1], pts)

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def columns(self) -> np.ndarray:
        """The d-by-n matrix V = [v_1, ..., v_n]."""
        return self.points.T

    def subset(self, indices: Sequence[int]) -> "PointSet":
        return PointSet(self.dim, self.points[list(indices)])

    def without(self, j: int) -> "PointSet":
        return PointSet(self.dim, np.delete(self.points, j, axis=0))

    def scale(self) -> float:
        return float(np.max(np.linalg.norm(self.points, axis=1))) if self.n else 0.0

    def __eq__(self, other):
        if not isinstance(other, PointSet):
            return NotImplemented
        return self.dim == other.dim and np.array_equal(self.points, other.points)

    def __hash__(self):
        return hash((self.dim, self.points.shape, self.points.tobytes()))

    def to_json(self) -> dict:
        return {"dim": self.dim, "points": [[float(x) for x in row] for row in self.points]}

    @classmethod
    def from_json(cls, obj) -> "PointSet":
        try:
            dim = int(obj["dim"])
            pts = obj["points"]
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed PointSet JSON: {exc}") from None
        if not isinstance(pts, list) or any(
            not isinstance(p, list) or len(p) != dim for p in pts
        ):
            raise InputError(f"PointSet JSON: every point must be a list of {dim} numbers")
        try:
            arr = np.array(pts, dtype=float).reshape(len(pts), dim)
        except (TypeError, ValueError) as exc:
            raise InputError(f"PointSet JSON: {exc}") from None
        return cls(dim, arr)


@dataclass(frozen=True)
class ConvexCombination:
    support: tuple[int, ...]
    weights: np.ndarray

    def __post_init__(self):
        w = np.array(self.weights, dtype=float).ravel()
        if len(self.support) != w.size:
            raise InputError("support and weights differ in length")
        object.__setattr__(self, "support", tuple(int(i) for i in self.support))
        object.__setattr__(self, "weights", w)

    def point(self, ps: PointSet) -> np.ndarray:
        if not self.support:
            return np.zeros(ps.dim)
        return self.weights @ ps.points[list(self.support)]

    def residual(self, ps: PointSet, target=None) -> float:
        t = np.zeros(ps.dim) if target is None else np.asarray(target, dtype=float)
        return float(np.linalg.norm(self.point(ps) - t))

    def verify(self, ps: PointSet, tol: float, target=None) -> bool:
        """Weights positive, summing to one, combining to ``target`` within ``tol``."""
        if not self.support or len(set(self.support)) != len(self.support):
            return False
        if any(i < 0 or i >= ps.n for i in self.support):
            return False
        if np.any(self.weights <= 0.0) or abs(float(self.weights.sum()) - 1.0) > 1e-12:
            return False
        return self.residual(ps, target) <= tol

    def to_json(self) -> dict:
        return {"support": list(self.support), "weights": [float(w) for w in self.weights]}


class SeparationMode(enum.Enum):
    STRICT = "strict"
    WEAK = "weak"


class Provenance(enum.Enum):
    DIRECT = "direct"
    PERRON_BUILT = "perron"


@dataclass(frozen=True)
class SeparatorCertificate:
    y: np.ndarray
    mode: SeparationMode
    margin: float  # min_i <v_i, y> / |y|
    provenance: Provenance = Provenance.DIRECT

    def to_json(self) -> dict:
        return {
            "y": [float(t) for t in self.y],
            "mode": self.mode.value,
            "margin": self.margin,
            "provenance": self.provenance.value,
        }


def separator_margin(ps: PointSet, y) -> float:
    y = np.asarray(y, dtype=float)
    ny = float(np.linalg.norm(y))
    if ny == 0.0:
        return -math.inf
    return float(np.min(ps.points @ y)) / ny


def make_separator(ps, y, mode, provenance=Provenance.DIRECT) -> SeparatorCertificate:
    y = np.array(y, dtype=float)
    return SeparatorCertificate(y, SeparationMode(mode), separator_margin(ps, y), Provenance(provenance))


# --------------------------------------------------------------------------
# minimum-norm point


def _affine_minimizer(q: np.ndarray) -> np.ndarray:
    """Weights (summing to 1) of the point of aff(rows of q) nearest the origin."""
    k = q.shape[0]
    if k == 1:
        return np.ones(1)
    d = (q[1:] - q[0]).T
    beta, *_ = np.linalg.lstsq(d, -q[0], rcond=None)
    return np.concatenate([[1.0 - beta.sum()], beta])


def _wolfe(q: np.ndarray, max_iter: int) -> tuple[np.ndarray, list[int], np.ndarray]:
    """Wolfe's minimum-norm-point method on the rows of ``q`` (norms <= 1)."""
    norms2 = np.einsum("ij,ij->i", q, q)
    j0 = int(np.argmin(norms2))
    support = [j0]
    lam = np.ones(1)
    x = q[j0].copy()
    for _ in range(max_iter):
        xx = float(x @ x)
        if xx <= 1e-30:
            break
        dots = q @ x
        j = int(np.argmin(dots))
        if dots[j] >= xx - WOLFE_TOL or j in support:
            break
        support.append(j)
        lam = np.append(lam, 0.0)
        while True:
            alpha = _affine_minimizer(q[support])
            if np.all(alpha > _WEIGHT_EPS):
                lam = alpha
                break
            mask = alpha <= _WEIGHT_EPS
            denom = lam[mask] - alpha[mask]
            ratios = np.where(denom > 0, lam[mask] / np.where(denom > 0, denom, 1.0), np.inf)
            theta = min(1.0, float(ratios.min()))
            lam = (1.0 - theta) * lam + theta * alpha
            drop = lam <= _WEIGHT_EPS
            if not drop.any():
                # Guard against stagnation: drop the most negative direction.
                drop = np.zeros_like(mask)
                drop[int(np.argmin(np.where(mask, lam, np.inf)))] = True
            keep = ~drop
            support = [s for s, k in zip(support, keep) if k]
            lam = lam[keep]
            lam = lam / lam.sum()
            if len(support) == 1:
                break
        x = lam @ q[support]
    else:
        raise NoConvergence("Wolfe's method exceeded its iteration budget", max_iter)
    order = np.argsort(support)
    return x, [support[i] for i in order], lam[order]


def min_norm_point(ps: PointSet, max_iter: int = 10_000) -> tuple[np.ndarray, ConvexCombination]:
    """Point of conv(ps) nearest the origin, with its convex-combination witness."""
    if ps.n < 1:
        raise InputError("min_norm_point() needs at least one point")
    r = ps.scale()
    if r == 0.0:
        return np.zeros(ps.dim), ConvexCombination((0,), np.ones(1))
    x, support, lam = _wolfe(ps.points / r, max_iter)
    comb = ConvexCombination(tuple(support), lam)
    return comb.point(ps), comb


# --------------------------------------------------------------------------
# membership


@dataclass(frozen=True)
class MembershipVerdict:
    inside: bool
    distance: float
    combination: ConvexCombination | None = None
    separator: SeparatorCertificate | None = None
    lp_infeasibility: float = 0.0

    def to_json(self) -> dict:
        out = {"verdict": "inside" if self.inside else "outside", "distance": self.distance}
        if self.combination is not None:
            out.update(self.combination.to_json())
        if self.separator is not None:
            out["separator"] = self.separator.to_json()
        return out


def _membership_lp(q: np.ndarray) -> float:
    """Phase-one residual of {sum l_i q_i = 0, sum l_i = 1, l >= 0}."""
    n, d = q.shape
    a = np.vstack([q.T, np.ones((1, n))])
    b = np.zeros(d + 1)
    b[-1] = 1.0
    return lp_solve(LpProblem(np.zeros(n), a, [EQ] * (d + 1), b)).infeasibility


def contains_origin(ps: PointSet, tol: float = MEMBERSHIP_TOL) -> MembershipVerdict:
    """Decide o in conv(ps) with a witness either way.

    Inside returns a convex combination; Outside returns the strict separator
    y = (minimum-norm point).  The decision is cross-checked against an LP
    feasibility solve; a disagreement raises :class:`InconsistentVerdict`.
    A scaled distance in the band (tol, max(10, sqrt(d)) * tol] raises
    :class:`ToleranceAmbiguous`.
    """
    if ps.n < 1:
        raise InputError("contains_origin() needs at least one point")
    r = ps.scale()
    if r == 0.0:
        return MembershipVerdict(True, 0.0, ConvexCombination((0,), np.ones(1)))
    q = ps.points / r
    x, support, lam = _wolfe(q, 10_000)
    dist = float(np.linalg.norm(x))
    band = max(10.0, math.sqrt(ps.dim)) * tol
    if tol < dist <= band:
        raise ToleranceAmbiguous(
            f"distance from origin to hull ({dist:.3g}, relative) is within the tolerance band",
            dist * r,
        )
    lp_r = _membership_lp(q)
    lp_inside = lp_r <= math.sqrt(ps.dim) * tol * (1.0 + 1e-9) + 1e-13
    comb = ConvexCombination(tuple(support), lam)
    if dist <= tol:
        if not lp_inside:
            raise InconsistentVerdict(f"min-norm point says inside, LP residual {lp_r:.3g}")
        if not comb.verify(ps, tol * r * (1.0 + 1e-6)):
            raise InconsistentVerdict("membership witness failed verification")
        return MembershipVerdict(True, dist * r, comb, lp_infeasibility=lp_r)
    if lp_inside:
        raise InconsistentVerdict(f"min-norm point at distance {dist:.3g} but LP feasible")
    y = comb.point(ps)
    sep = make_separator(ps, y, SeparationMode.STRICT)
    if not sep.margin > 0.0:
        raise InconsistentVerdict("minimum-norm point does not strictly separate")
    return MembershipVerdict(False, dist * r, separator=sep, lp_infeasibility=lp_r)


# --------------------------------------------------------------------------
# weak separation and interiority


def _weak_lp(q, objective, maximize, fixed=None):
    n, d = q.shape
    lower = -np.ones(d)
    upper = np.ones(d)
    if fixed is not None:
        k, s = fixed
        lower[k] = upper[k] = s
    return lp_solve(LpProblem(objective, q, [GE] * n, np.zeros(n), lower, upper, maximize=maximize))


def weak_separator(
    ps: PointSet, tol: float = SEPARATION_TOL, *, prefer_negative_on=None
) -> SeparatorCertificate | None:
    """Nonzero y with <v_i, y> >= 0 for all i, or ``None`` when o is interior.

    One LP over the box |y_j| <= 1 maximizing sum_i <v_i, y> settles most
    inputs.  When its optimum is 0 (y = 0 may be the only answer) the 2d
    normalizations y_k = +-1 are swept; every nonzero separator scales into
    one of them, so the sweep is exhaustive.  With ``prefer_negative_on=v``
    the first LP minimizes <v, y> instead, which is how leave-one-out
    separators that cut off v are found.
    """
    if ps.n < 1:
        raise InputError("weak_separator() needs at least one point")
    r = ps.scale()
    if r == 0.0:
        y = np.zeros(ps.dim)
        y[0] = 1.0
        return make_separator(ps, y, SeparationMode.WEAK)
    q = ps.points / r
    total = q.sum(axis=0)
    if prefer_negative_on is not None:
        v = np.asarray(prefer_negative_on, dtype=float) / r
        res = _weak_lp(q, v, maximize=False)
        if res.optimal and res.value < -tol and float(np.min(q @ res.x)) >= -tol:
            return make_separator(ps, res.x, SeparationMode.WEAK)
    res = _weak_lp(q, total, maximize=True)
    if res.optimal and res.value > tol and float(np.min(q @ res.x)) >= -tol:
        return make_separator(ps, res.x, SeparationMode.WEAK)
    for k in range(ps.dim):
        for s in (1.0, -1.0):
            res = _weak_lp(q, total, maximize=True, fixed=(k, s))
            if res.optimal and float(np.min(q @ res.x)) >= -tol:
                return make_separator(ps, res.x, SeparationMode.WEAK)
    return None


def max_min_weight(ps: PointSet) -> tuple[float, np.ndarray | None]:
    """Solve max delta s.t. sum l_i v_i = 0, sum l_i = 1, l_i >= delta.

    Returns ``(delta, weights)``; ``(-inf, None)`` when the origin is not in
    the affine hull.
    """
    n, d = ps.n, ps.dim
    r = ps.scale()
    if r == 0.0:
        return 1.0 / n, np.full(n, 1.0 / n)
    q = ps.points / r
    # l_i = delta + mu_i with mu >= 0 and delta free (last variable).
    a = np.zeros((d + 1, n + 1))
    a[:d, :n] = q.T
    a[:d, n] = q.sum(axis=0)
    a[d, :n] = 1.0
    a[d, n] = n
    b = np.zeros(d + 1)
    b[d] = 1.0
    c = np.zeros(n + 1)
    c[n] = 1.0
    lower = np.zeros(n + 1)
    lower[n] = -np.inf
    res = lp_solve(LpProblem(c, a, [EQ] * (d + 1), b, lower, None, maximize=True))
    if res.status is not LpStatus.OPTIMAL:
        return -math.inf, None
    delta = float(res.x[n])
    return delta, res.x[:n] + delta


def affine_rank(ps: PointSet, rtol: float = RANK_RTOL) -> tuple[int, bool]:
    if ps.n < 2:
        return 0, False
    r = ps.scale() or 1.0
    centered = (ps.points - ps.points.mean(axis=0)) / r
    return numerical_rank(centered, rtol)


@dataclass(frozen=True)
class InteriorVerdict:
    interior: bool
    depth: float  # optimal minimum weight delta*
    combination: ConvexCombination | None = None
    separator: SeparatorCertificate | None = None
    affine_rank: int = 0

    def to_json(self) -> dict:
        out = {
            "verdict": "interior" if self.interior else "not-interior",
            "depth": self.depth if math.isfinite(self.depth) else None,
            "affine_rank": self.affine_rank,
        }
        if self.combination is not None:
            out.update(self.combination.to_json())
        if self.separator is not None:
            out["separator"] = self.separator.to_json()
        return out


def is_interior(ps: PointSet, tol: float = INTERIOR_TOL) -> InteriorVerdict:
    """Decide whether o is an interior point of conv(ps).

    Interior iff the max-min-weight LP gives delta* > tol and the points
    affinely span R^d.  NotInterior carries a verified weak separator.
    """
    if ps.n < 1:
        raise InputError("is_interior() needs at least one point")
    delta, lam = max_min_weight(ps)
    rank = 0
    if delta > tol:
        rank, ambiguous = affine_rank(ps)
        if ambiguous:
            raise RankAmbiguous("affine rank of the point set is within the tolerance band")
        if rank == ps.dim:
            lam = lam / lam.sum()
            comb = ConvexCombination(tuple(range(ps.n)), lam)
            if not comb.verify(ps, 1e-7 * max(1.0, ps.scale())):
                raise InconsistentVerdict("interior witness failed verification")
            return InteriorVerdict(True, delta, comb, affine_rank=rank)
    sep = weak_separator(ps)
    if sep is None:
        raise InconsistentVerdict(
            f"no weak separator found although delta*={delta:.3g}, affine rank {rank}"
        )
    return InteriorVerdict(False, delta, separator=sep, affine_rank=rank)
