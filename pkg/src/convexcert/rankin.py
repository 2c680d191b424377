"""Rankin's bounds: at most d+1 pairwise-obtuse, at most 2d pairwise
non-acute nonzero vectors in R^d.

Angles are never computed; "obtuse" means every pairwise dot is below
``-tol`` and "non-acute" means every pairwise dot of the normalized vectors
is at most ``tol``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .errors import InputError, ModeViolated, ZeroVector
from .geometry import PointSet
from .numerics import (
    CLUSTER_TOL,
    SpectralReport,
    as_matrix,
    gram,
    perron,
    symmetric_eig,
)

ANGLE_TOL = 1e-10


class AngleMode(enum.Enum):
    OBTUSE = "obtuse"
    NONACUTE = "nonacute"


def bound_for(d: int, mode) -> int:
    return d + 1 if AngleMode(mode) is AngleMode.OBTUSE else 2 * d


@dataclass(frozen=True)
class AngleCheckReport:
    mode: AngleMode
    n: int
    d: int
    max_pair_dot: float
    bound: int
    predicate_holds: bool
    normalized: bool
    spectral_witness: SpectralReport | None = field(default=None, repr=False)

    @property
    def within_bound(self) -> bool:
        return self.n <= self.bound

    def to_json(self) -> dict:
        out = {
            "mode": self.mode.value,
            "n": self.n,
            "d": self.d,
            "max_pair_dot": self.max_pair_dot,
            "bound": self.bound,
            "predicate_holds": self.predicate_holds,
            "within_bound": self.within_bound,
            "normalized": self.normalized,
        }
        if self.spectral_witness is not None:
            out["gram_spectrum"] = self.spectral_witness.to_json()
        return out


def _unit_rows(points: np.ndarray) -> np.ndarray:
    return points / np.linalg.norm(points, axis=1)[:, None]


def check_angles(ps: PointSet, mode, tol: float = ANGLE_TOL) -> AngleCheckReport:
    mode = AngleMode(mode)
    norms = np.linalg.norm(ps.points, axis=1)
    if np.any(norms <= tol):
        raise ZeroVector(f"vector {int(np.argmin(norms))} has (near) zero length")
    pts = ps.points if mode is AngleMode.OBTUSE else _unit_rows(ps.points)
    g = gram(pts)
    n = ps.n
    if n > 1:
        max_dot = float(np.max(g[~np.eye(n, dtype=bool)]))
    else:
        max_dot = -np.inf
    holds = max_dot < -tol if mode is AngleMode.OBTUSE else max_dot <= tol
    return AngleCheckReport(
        mode=mode,
        n=n,
        d=ps.dim,
        max_pair_dot=max_dot,
        bound=bound_for(ps.dim, mode),
        predicate_holds=bool(holds),
        normalized=mode is AngleMode.NONACUTE,
        spectral_witness=symmetric_eig(g),
    )


def extremal_config(d: int, mode) -> PointSet:
    """Configurations meeting the bounds: regular simplex directions or +-e_i."""
    mode = AngleMode(mode)
    if d < 1:
        raise InputError("dimension must be at least 1")
    if mode is AngleMode.NONACUTE:
        eye = np.eye(d)
        pts = np.empty((2 * d, d))
        pts[0::2] = eye
        pts[1::2] = -eye
        return PointSet(d, pts)
    # Vertices e_i of R^{d+1}, centred, written in an orthonormal basis of the
    # sum-zero hyperplane built by Gram-Schmidt from e_i - e_{d+1}.
    m = d + 1
    centred = np.eye(m) - 1.0 / m
    seed = np.eye(m)[:, :d] - np.eye(m)[:, [d]]
    basis = np.zeros((m, d))
    for k in range(d):
        v = seed[:, k].copy()
        for _ in range(2):
            v -= basis[:, :k] @ (basis[:, :k].T @ v)
        basis[:, k] = v / np.linalg.norm(v)
    pts = centred @ basis
    return PointSet(d, _unit_rows(pts))


@dataclass(frozen=True)
class WitnessReport:
    mode: AngleMode | None
    n: int
    d: int
    realizable: bool | None  # None: rank decision inside the ambiguity band
    gram_spectrum: SpectralReport
    h_spectrum: SpectralReport | None = None
    details: dict = field(default_factory=dict)

    @property
    def verdict(self) -> str:
        return {True: "realizable", False: "unrealizable", None: "indeterminate"}[self.realizable]

    def to_json(self) -> dict:
        out = {
            "mode": None if self.mode is None else self.mode.value,
            "n": self.n,
            "d": self.d,
            "verdict": self.verdict,
            "gram_spectrum": self.gram_spectrum.to_json(),
            "details": self.details,
        }
        if self.h_spectrum is not None:
            out["h_spectrum"] = self.h_spectrum.to_json()
        return out


def spectral_witness(g, d: int, mode=None, tol: float = ANGLE_TOL) -> WitnessReport:
    """Can ``g`` be the Gram matrix of n vectors in R^d obeying ``mode``?

    Realizability needs ``g`` PSD with numerical rank <= d.  For the two
    modes the report also carries the spectral obstruction: for obtuse sets
    ``H = lam*I - G`` is positive, so its top eigenvalue is simple, yet a
    rank <= d Gram matrix would give lam multiplicity n - d; for non-acute
    unit sets ``tr(I - G) = 0`` while eigenvalue 1 of ``I - G`` would have
    multiplicity n - d, leaving d eigenvalues of modulus <= 1 to sum to
    -(n - d).
    """
    g = as_matrix(g, square=True)
    sym = symmetric_eig(g, tol)  # raises NotSymmetric
    n = g.shape[0]
    mode = None if mode is None else AngleMode(mode)
    off = g[~np.eye(n, dtype=bool)]
    diag = np.diag(g)
    if mode is AngleMode.OBTUSE and (np.any(diag <= 0) or np.any(off >= -tol)):
        raise ModeViolated("obtuse mode needs a positive diagonal and negative off-diagonal")
    if mode is AngleMode.NONACUTE and (np.any(np.abs(diag - 1.0) > tol) or np.any(off > tol)):
        raise ModeViolated("non-acute mode needs a unit diagonal and non-positive off-diagonal")

    if sym.rank_ambiguous:
        realizable = None
    else:
        realizable = bool(sym.psd and sym.numerical_rank <= d)
    details = {"psd": sym.psd, "rank": sym.numerical_rank, "rank_ambiguous": sym.rank_ambiguous}
    h_spec = None
    if mode is AngleMode.OBTUSE:
        shift = float(diag.max()) + 1.0
        h = shift * np.eye(n) - g
        h_spec = symmetric_eig(h, tol)
        top = float(h_spec.eigenvalues[-1])
        top_mult = h_spec.multiplicity_near(top, CLUSTER_TOL * max(1.0, abs(top)))
        details.update(
            shift=shift,
            h_positive=bool(np.all(h > 0)),
            h_top=top,
            h_top_multiplicity=top_mult,
            shift_multiplicity=h_spec.multiplicity_near(shift, CLUSTER_TOL * max(1.0, shift)),
            required_shift_multiplicity=max(0, n - d),
            perron_rho=perron(h).rho if np.all(h > 0) else None,
            bound=d + 1,
            within_bound=n <= d + 1,
        )
    elif mode is AngleMode.NONACUTE:
        h = np.eye(n) - g
        h_spec = symmetric_eig(h, tol)
        ones = h_spec.multiplicity_near(1.0)
        details.update(
            trace=float(np.trace(h)),
            rho=float(np.max(np.abs(h_spec.eigenvalues))),
            eigenvalue_one_multiplicity=ones,
            required_one_multiplicity=max(0, n - d),
            forced_sum_of_rest=-float(max(0, n - d)),
            max_attainable_sum=float(d),
            sum_of_lowest_d=float(np.sum(h_spec.eigenvalues[: min(d, n)])),
            bound=2 * d,
            within_bound=n <= 2 * d,
        )
    return WitnessReport(mode, n, d, realizable, sym, h_spec, details)
