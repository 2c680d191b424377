"""Global separating hyperplanes assembled from leave-one-out separators.

Given y_1..y_n where y_j separates every point except v_j, form the n-by-n
matrix ``H = shift * I + V^T Y`` (entry (i, j) is ``<v_i, y_j>`` off the
diagonal).  Its Perron vector x makes ``y* = Y x`` a single separator for the
whole set, because ``V^T Y x = (rho(H) - shift) x``.

* strict case: ``shift`` is chosen so H is entrywise positive; x > 0 and
  every ``<v_i, y*>`` is positive, so o lies outside conv(V).
* weak case: each y_j is rescaled so ``<v_j, y_j> = -1`` and ``shift = 1``;
  H is nonnegative, x >= 0, and for n > 2d the trace of H forces
  ``rho(H) > 1``, so y* is a nonzero weak separator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    CertificateFailed,
    InputError,
    NonPositiveH,
    RhoNotAboveOne,
    SeparatorInvalid,
    ZeroSeparator,
)
from .geometry import (
    PointSet,
    Provenance,
    SeparationMode,
    SeparatorCertificate,
    contains_origin,
    make_separator,
    weak_separator,
)
from .numerics import PerronConfig, PerronPair, matrix_to_json, perron

WEAK_TOL = 1e-9
MIN_SELF_DOT = 1e-12


@dataclass(frozen=True)
class LeaveOneOutSeparators:
    ys: np.ndarray  # shape (n, d); row j separates every point but v_j
    mode: SeparationMode

    def __post_init__(self):
        object.__setattr__(self, "ys", np.array(self.ys, dtype=float))
        object.__setattr__(self, "mode", SeparationMode(self.mode))

    @property
    def columns(self) -> np.ndarray:
        """The d-by-n matrix Y = [y_1, ..., y_n]."""
        return self.ys.T


@dataclass(frozen=True)
class PerronCertificate:
    kind: str  # "caratheodory" or "steinitz"
    h: np.ndarray
    shift: float
    perron: PerronPair
    separator: SeparatorCertificate
    eigen_residual: float  # max |V^T Y x - (rho - shift) x|
    ys: np.ndarray = field(repr=False)

    @property
    def rho(self) -> float:
        return self.perron.rho

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "lambda": self.shift,
            "rho": self.perron.rho,
            "x": [float(t) for t in self.perron.x],
            "y_star": [float(t) for t in self.separator.y],
            "H": matrix_to_json(self.h),
            "margin": self.separator.margin,
            "direct": False,
        }


@dataclass(frozen=True)
class DirectCertificate:
    """A leave-one-out separator that already separates its own point."""

    index: int
    separator: SeparatorCertificate
    kind: str = "steinitz"

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "lambda": None,
            "rho": None,
            "x": None,
            "y_star": [float(t) for t in self.separator.y],
            "H": None,
            "margin": self.separator.margin,
            "direct": True,
            "index": self.index,
        }


@dataclass(frozen=True)
class VerificationReport:
    passed: bool
    mode: SeparationMode
    min_dot: float
    min_margin: float  # min_i <v_i, y / |y|>
    y_norm: float
    violations: tuple[int, ...] = ()

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "mode": self.mode.value,
            "min_dot": self.min_dot,
            "min_margin": self.min_margin,
            "y_norm": self.y_norm,
            "violations": list(self.violations),
        }


def verify_certificate(
    ps: PointSet, cert: SeparatorCertificate, tol: float = WEAK_TOL, strict_margin: float = 0.0
) -> VerificationReport:
    """Recompute every <v_i, y> and judge the claimed mode.

    Strict passes iff every normalized dot exceeds ``strict_margin``; weak
    passes iff y is nonzero and every raw dot is at least ``-tol``.  Stored
    margins are ignored.
    """
    y = np.asarray(cert.y, dtype=float)
    mode = SeparationMode(cert.mode)
    ny = float(math.sqrt(float(y @ y)))
    dots = np.array([float(np.dot(v, y)) for v in ps.points])
    if ny == 0.0 or dots.size == 0:
        return VerificationReport(False, mode, -math.inf, -math.inf, ny)
    normalized = dots / ny
    if mode is SeparationMode.STRICT:
        bad = np.flatnonzero(normalized <= strict_margin)
    else:
        bad = np.flatnonzero(dots < -tol)
    return VerificationReport(
        passed=bad.size == 0,
        mode=mode,
        min_dot=float(dots.min()),
        min_margin=float(normalized.min()),
        y_norm=ny,
        violations=tuple(int(i) for i in bad),
    )


def leave_one_out_separators(ps: PointSet, mode) -> LeaveOneOutSeparators:
    """Separators y_j for each ps minus v_j, supplied by the geometry oracles.

    Strict: y_j is the minimum-norm point of the other points.  Weak: y_j
    minimizes <v_j, y> over weak separators of the others, so that it cuts
    off v_j whenever that is possible.  Raises :class:`SeparatorInvalid` if
    some leave-one-out set admits no separator of the requested kind.
    """
    mode = SeparationMode(mode)
    if ps.n < 2:
        raise InputError("leave-one-out separators need at least two points")
    ys = []
    for j in range(ps.n):
        rest = ps.without(j)
        if mode is SeparationMode.STRICT:
            verdict = contains_origin(rest)
            if verdict.inside:
                raise SeparatorInvalid(f"origin lies in the hull of the points other than {j}")
            y = verdict.separator.y
            y = y / np.linalg.norm(y)
        else:
            sep = weak_separator(rest, prefer_negative_on=ps.points[j])
            if sep is None:
                raise SeparatorInvalid(f"origin is interior to the hull of the points other than {j}")
            y = sep.y
        ys.append(y)
    return LeaveOneOutSeparators(np.array(ys), mode)


def _cross_dots(ps: PointSet, seps: LeaveOneOutSeparators) -> np.ndarray:
    if seps.ys.shape != (ps.n, ps.dim):
        raise SeparatorInvalid(
            f"expected {ps.n} separators in R^{ps.dim}, got array of shape {seps.ys.shape}"
        )
    return ps.points @ seps.ys.T  # (i, j) -> <v_i, y_j>


def certify_nonmembership(
    ps: PointSet, seps: LeaveOneOutSeparators, cfg: PerronConfig | None = None
) -> PerronCertificate:
    """One strict separator for all points, from strict leave-one-out ones."""
    if ps.n < 2:
        raise InputError("certify_nonmembership() needs n >= 2")
    vty = _cross_dots(ps, seps)
    off = vty[~np.eye(ps.n, dtype=bool)]
    if seps.mode is not SeparationMode.STRICT or np.any(off <= 0.0):
        raise SeparatorInvalid("leave-one-out separators are not strict on the other points")
    shift = max(0.0, float(np.max(-np.diag(vty)))) + 1.0
    h = shift * np.eye(ps.n) + vty
    if np.any(h <= 0.0):
        raise NonPositiveH("H = shift*I + V^T Y has a non-positive entry")
    pair = perron(h, cfg)
    if np.any(pair.x <= 0.0):
        raise CertificateFailed("Perron vector of a positive matrix is not positive")
    y_star = seps.ys.T @ pair.x
    sep = make_separator(ps, y_star, SeparationMode.STRICT, Provenance.PERRON_BUILT)
    report = verify_certificate(ps, sep)
    if not report.passed:
        raise CertificateFailed(f"y* = Yx fails strict separation (min margin {report.min_margin:.3g})")
    eig_res = float(np.max(np.abs(vty @ pair.x - (pair.rho - shift) * pair.x)))
    return PerronCertificate("caratheodory", h, shift, pair, sep, eig_res, seps.ys.copy())


def certify_noninterior(
    ps: PointSet,
    seps: LeaveOneOutSeparators,
    cfg: PerronConfig | None = None,
    tol: float = WEAK_TOL,
) -> PerronCertificate | DirectCertificate:
    """One weak separator for all points, from weak leave-one-out ones."""
    if ps.n < 2:
        raise InputError("certify_noninterior() needs n >= 2")
    vty = _cross_dots(ps, seps)
    norms = np.linalg.norm(seps.ys, axis=1)
    off = vty[~np.eye(ps.n, dtype=bool)]
    if np.any(norms <= tol) or np.any(off < -tol):
        raise SeparatorInvalid("leave-one-out separators are not weak separators of the other points")
    self_dots = np.diag(vty)
    direct = np.flatnonzero(self_dots >= -tol)
    if direct.size:
        i = int(direct[0])
        sep = make_separator(ps, seps.ys[i], SeparationMode.WEAK)
        if not verify_certificate(ps, sep, tol).passed:
            raise CertificateFailed("direct separator failed verification")
        return DirectCertificate(i, sep)
    if np.any(-self_dots < MIN_SELF_DOT):
        raise SeparatorInvalid("a separator has <v_i, y_i> too close to zero to rescale")
    ys = seps.ys / (-self_dots)[:, None]
    vty = ps.points @ ys.T
    h = np.eye(ps.n) + vty
    # Rounding can leave -1e-17 where the exact entry is 0; the rest is >= 0.
    np.fill_diagonal(h, 0.0)
    h = np.where((h < 0.0) & (h >= -tol), 0.0, h)
    pair = perron(h, cfg)
    if not pair.rho > 1.0 + 1e-12:
        raise RhoNotAboveOne(f"rho(H) = {pair.rho!r} is not above 1 (n={ps.n}, d={ps.dim})")
    y_star = ys.T @ pair.x
    if float(np.linalg.norm(y_star)) <= tol:
        raise ZeroSeparator("y* = Yx vanished")
    sep = make_separator(ps, y_star, SeparationMode.WEAK, Provenance.PERRON_BUILT)
    report = verify_certificate(ps, sep, tol)
    if not report.passed:
        raise CertificateFailed(f"y* = Yx fails weak separation (min dot {report.min_dot:.3g})")
    eig_res = float(np.max(np.abs(vty @ pair.x - (pair.rho - 1.0) * pair.x)))
    return PerronCertificate("steinitz", h, 1.0, pair, sep, eig_res, ys)
