"""Seeded instance generation; every instance is verified before it is returned."""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import GenerationFailed, NumericalError
from .geometry import ConvexCombination, PointSet, contains_origin, is_interior
from .rankin import AngleMode, check_angles, extremal_config
from .rng import Xoshiro256

MAX_RETRIES = 100
# Generated Outside instances keep the hull at least this (relative) distance
# from the origin, far from the membership tolerance band.
OUTSIDE_MARGIN = 1e-3


class Kind(enum.Enum):
    ORIGIN_INSIDE = "inside"
    ORIGIN_OUTSIDE = "outside"
    ORIGIN_INTERIOR = "interior"
    ORIGIN_BOUNDARY = "boundary"
    RANKIN_OBTUSE = "obtuse"
    RANKIN_NONACUTE = "nonacute"


_ALIASES = {
    "origininside": Kind.ORIGIN_INSIDE,
    "originoutside": Kind.ORIGIN_OUTSIDE,
    "origininterior": Kind.ORIGIN_INTERIOR,
    "originboundary": Kind.ORIGIN_BOUNDARY,
    "rankinobtuse": Kind.RANKIN_OBTUSE,
    "rankinnonacute": Kind.RANKIN_NONACUTE,
}


def parse_kind(text) -> Kind:
    if isinstance(text, Kind):
        return text
    key = str(text).replace("-", "").replace("_", "").lower()
    if key in _ALIASES:
        return _ALIASES[key]
    try:
        return Kind(key)
    except ValueError:
        raise ValueError(f"unknown instance kind {text!r}") from None


@dataclass(frozen=True)
class InstanceSpec:
    dim: int
    n: int
    kind: Kind
    seed: int

    def __post_init__(self):
        object.__setattr__(self, "kind", parse_kind(self.kind))


def _orthonormal(rng: Xoshiro256, d: int, k: int) -> np.ndarray:
    """k orthonormal columns in R^d (Gram-Schmidt on Gaussian vectors)."""
    out = np.zeros((d, k))
    col = 0
    while col < k:
        v = rng.normal_array(d)
        for _ in range(2):
            v -= out[:, :col] @ (out[:, :col].T @ v)
        nrm = np.linalg.norm(v)
        if nrm > 1e-6:
            out[:, col] = v / nrm
            col += 1
    return out


def _planted_inside(rng, d, n):
    pts = rng.normal_array(n, d)
    w = rng.simplex_weights(n)
    pts = pts - w @ pts
    return pts, w


def _outside(rng, d, n):
    u = rng.unit_vector(d)
    pts = rng.normal_array(n, d)
    gap = 0.1 + 0.9 * rng.random()
    pts = pts + (gap - (pts @ u).min()) * u
    return pts


def _boundary(rng, d, n):
    """Origin in the relative interior of a proper face spanned by max(1, d-1) points."""
    f = min(n, max(1, d - 1))
    u = rng.unit_vector(d)
    basis = _orthonormal_complement(u)
    face = rng.normal_array(f, d - 1) @ basis.T if d > 1 else np.zeros((f, 1))
    w = rng.simplex_weights(f)
    face = face - w @ face
    rest = rng.normal_array(n - f, d)
    if n - f:
        rest = rest + (0.1 - (rest @ u).min()) * u
    return _shuffled(rng, np.vstack([face, rest]))


def _shuffled(rng, pts):
    perm = list(range(len(pts)))
    for i in range(len(perm) - 1, 0, -1):
        j = rng.integers(0, i)
        perm[i], perm[j] = perm[j], perm[i]
    return pts[perm]


def _orthonormal_complement(u: np.ndarray) -> np.ndarray:
    """d x (d-1) orthonormal basis of the complement of unit vector u."""
    d = u.size
    basis = []
    for e in np.eye(d):
        v = e - (e @ u) * u
        for b in basis:
            v -= (v @ b) * b
        nrm = np.linalg.norm(v)
        if nrm > 1e-6:
            basis.append(v / nrm)
        if len(basis) == d - 1:
            break
    return np.array(basis).T.reshape(d, d - 1)


def _obtuse(rng, d, n):
    base = extremal_config(n - 1, AngleMode.OBTUSE).points if n > 1 else np.ones((1, 1))
    q = _orthonormal(rng, d, base.shape[1])
    pts = base @ q.T
    pts += 0.05 / max(1, n - 1) * rng.normal_array(n, d) / np.sqrt(d)
    scales = np.array([0.5 + rng.random() for _ in range(n)])
    return pts * scales[:, None]


def _nonacute(rng, d, n):
    q = _orthonormal(rng, d, d)
    dirs = np.vstack([q.T, -q.T])
    picks = rng.choice(2 * d, n)
    scales = np.array([0.5 + rng.random() for _ in range(n)])
    return dirs[picks] * scales[:, None]


def _check_feasible(spec: InstanceSpec):
    d, n, kind = spec.dim, spec.n, spec.kind
    if d < 1 or n < 1:
        raise GenerationFailed("dimension and point count must be positive", impossible=True)
    if kind is Kind.ORIGIN_INTERIOR and n < d + 1:
        raise GenerationFailed(f"interior instances need n >= d+1 = {d + 1}", impossible=True)
    if kind is Kind.RANKIN_OBTUSE and n > d + 1:
        raise GenerationFailed(
            f"no {n} pairwise-obtuse vectors exist in R^{d} (bound d+1 = {d + 1})", impossible=True
        )
    if kind is Kind.RANKIN_NONACUTE and n > 2 * d:
        raise GenerationFailed(
            f"no {n} pairwise non-acute vectors exist in R^{d} (bound 2d = {2 * d})", impossible=True
        )


def generate_with_witness(spec: InstanceSpec) -> tuple[PointSet, ConvexCombination | None]:
    """Like :func:`generate`, also returning the planted combination for inside kinds."""
    _check_feasible(spec)
    rng = Xoshiro256(spec.seed)
    d, n, kind = spec.dim, spec.n, spec.kind
    for _ in range(MAX_RETRIES):
        witness = None
        if kind in (Kind.ORIGIN_INSIDE, Kind.ORIGIN_INTERIOR):
            pts, w = _planted_inside(rng, d, n)
            witness = ConvexCombination(tuple(range(n)), w)
        elif kind is Kind.ORIGIN_OUTSIDE:
            pts = _outside(rng, d, n)
        elif kind is Kind.ORIGIN_BOUNDARY:
            pts = _boundary(rng, d, n)
        elif kind is Kind.RANKIN_OBTUSE:
            pts = _obtuse(rng, d, n)
        else:
            pts = _nonacute(rng, d, n)
        ps = PointSet(d, pts)
        try:
            if _verify(ps, kind):
                return ps, witness
        except NumericalError:
            pass
    raise GenerationFailed(f"no valid {kind.value} instance after {MAX_RETRIES} tries (seed {spec.seed})")


def _verify(ps: PointSet, kind: Kind) -> bool:
    if kind is Kind.ORIGIN_INSIDE:
        return contains_origin(ps).inside
    if kind is Kind.ORIGIN_OUTSIDE:
        v = contains_origin(ps)
        return not v.inside and v.distance > OUTSIDE_MARGIN * ps.scale()
    if kind is Kind.ORIGIN_INTERIOR:
        return is_interior(ps).interior
    if kind is Kind.ORIGIN_BOUNDARY:
        return contains_origin(ps).inside and not is_interior(ps).interior
    if kind is Kind.RANKIN_OBTUSE:
        return check_angles(ps, AngleMode.OBTUSE).predicate_holds
    return check_angles(ps, AngleMode.NONACUTE).predicate_holds


def generate(spec: InstanceSpec) -> PointSet:
    return generate_with_witness(spec)[0]


def conic_boundary_instance(d: int, seed: int, lineality: int = 1) -> PointSet:
    """Boundary instance with n = 2d+1 where no point lies in the cone of the others.

    The points are the 2*lineality vectors +-q_k spanning a subspace L, plus
    2d+1-2*lineality points whose projections onto L's complement lie on a
    circular cone (so they are conically independent).  The origin is in the
    hull (via +-q_k) but not interior (the cone part is pointed).  Needs
    d - lineality >= 3; for d <= 3 no such set of 2d+1 points exists.
    """
    rng = Xoshiro256(seed)
    n = 2 * d + 1
    k = n - 2 * lineality
    c = d - lineality
    if lineality < 1 or k < 1 or c < 3:
        raise GenerationFailed(
            f"no conically independent boundary set with d={d}, lineality={lineality}",
            impossible=True,
        )
    for _ in range(MAX_RETRIES):
        q = _orthonormal(rng, d, d)
        lin, comp = q[:, :lineality], q[:, lineality:]
        axis = comp[:, 0]
        cross = comp[:, 1:]
        angles = sorted(rng.uniform(0.0, 2.0 * np.pi) for _ in range(k))
        cone_pts = []
        for t in angles:
            ring = cross[:, 0] * np.cos(t) + cross[:, 1] * np.sin(t)
            radial = 1.0 + 0.5 * rng.random()
            p = (axis + 0.8 * ring) * radial + lin @ rng.normal_array(lineality)
            cone_pts.append(p)
        ps = PointSet(d, _shuffled(rng, np.vstack([lin.T, -lin.T, np.array(cone_pts)])))
        try:
            if _verify(ps, Kind.ORIGIN_BOUNDARY):
                return ps
        except NumericalError:
            pass
    raise GenerationFailed(f"could not build a conic boundary instance (d={d}, seed={seed})")
