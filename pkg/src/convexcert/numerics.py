"""Dense linear algebra: Gram matrices, symmetric spectra, Perron pairs.

Matrices are plain 2-d float ``numpy`` arrays.  The inner loops (Jacobi
rotations, power iteration) live in :mod:`convexcert.kernels`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import InputError, NegativeEntries, NoConvergence, NotSymmetric

# Default tolerances.
CONVERGENCE_TOL = 1e-10
PSD_TOL = 1e-9
RANK_RTOL = 1e-8
CLUSTER_TOL = 1e-7
# A singular value within this factor of the rank threshold (either side)
# makes the rank decision ambiguous.
RANK_BAND = 100.0


def as_matrix(m, *, square=False) -> np.ndarray:
    a = np.array(m, dtype=float)
    if a.ndim != 2:
        raise InputError(f"expected a 2-d matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise InputError("matrix has non-finite entries")
    if square and a.shape[0] != a.shape[1]:
        raise InputError(f"expected a square matrix, got shape {a.shape}")
    return a


def matrix_to_json(m) -> dict:
    a = as_matrix(m)
    return {"rows": a.shape[0], "cols": a.shape[1], "data": [float(x) for x in a.ravel()]}


def matrix_from_json(obj) -> np.ndarray:
    try:
        rows, cols, data = int(obj["rows"]), int(obj["cols"]), obj["data"]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed matrix JSON: {exc}") from None
    if rows * cols != len(data):
        raise InputError(f"matrix JSON has {len(data)} entries, expected {rows}x{cols}")
    return as_matrix(np.array(data, dtype=float).reshape(rows, cols))


def gram(points) -> np.ndarray:
    """Gram matrix ``G[i, j] = <v_i, v_j>`` of the rows of ``points``.

    Each unordered pair is computed once and mirrored, so the result is
    exactly symmetric.
    """
    p = as_matrix(points)
    n = p.shape[0]
    if n < 1:
        raise InputError("gram() needs at least one point")
    g = np.empty((n, n))
    for i in range(n):
        row = p[i:] @ p[i]
        g[i, i:] = row
        g[i:, i] = row
    return g


@dataclass(frozen=True)
class SpectralReport:
    eigenvalues: np.ndarray  # sorted non-decreasing
    eigenvectors: np.ndarray = field(repr=False)  # columns, same order
    clusters: tuple[tuple[int, ...], ...]
    psd: bool
    numerical_rank: int
    rank_ambiguous: bool
    sweeps: int

    @property
    def n(self) -> int:
        return len(self.eigenvalues)

    def multiplicity_near(self, value: float, tol: float = CLUSTER_TOL) -> int:
        return int(np.sum(np.abs(self.eigenvalues - value) <= tol))

    def to_json(self) -> dict:
        return {
            "eigenvalues": [float(x) for x in self.eigenvalues],
            "clusters": [list(c) for c in self.clusters],
            "psd": self.psd,
            "numerical_rank": self.numerical_rank,
            "rank_ambiguous": self.rank_ambiguous,
        }


def cluster_sorted(values, tol: float = CLUSTER_TOL) -> tuple[tuple[int, ...], ...]:
    """Group indices of sorted ``values`` so members of a group differ by <= tol."""
    clusters = []
    current: list[int] = []
    anchor = 0.0
    for i, v in enumerate(values):
        if current and v - anchor <= tol:
            current.append(i)
        else:
            if current:
                clusters.append(tuple(current))
            current, anchor = [i], v
    if current:
        clusters.append(tuple(current))
    return tuple(clusters)


def _rank_from_magnitudes(mags, rtol):
    mags = np.asarray(mags, dtype=float)
    top = float(mags.max()) if mags.size else 0.0
    if top == 0.0:
        return 0, False
    thresh = rtol * top
    rank = int(np.sum(mags > thresh))
    ambiguous = bool(np.any((mags > thresh / RANK_BAND) & (mags <= thresh * RANK_BAND)))
    return rank, ambiguous


def symmetric_eig(
    m,
    tol: float = CONVERGENCE_TOL,
    *,
    psd_tol: float = PSD_TOL,
    rank_rtol: float = RANK_RTOL,
    cluster_tol: float = CLUSTER_TOL,
    max_sweeps: int = 100,
) -> SpectralReport:
    """Full spectrum of a symmetric matrix by cyclic Jacobi rotations.

    Raises :class:`NotSymmetric` when ``max|m - m.T| > tol`` and
    :class:`NoConvergence` when the eigen-residual ``max|mQ - Q diag(w)|``
    exceeds ``tol * max(1, max|m|)``.
    """
    a = as_matrix(m, square=True)
    asym = float(np.max(np.abs(a - a.T))) if a.size else 0.0
    if asym > tol:
        raise NotSymmetric(f"matrix is not symmetric (max asymmetry {asym:.3g} > {tol:.3g})")
    a = 0.5 * (a + a.T)
    w, v, sweeps, converged = kernels.jacobi_eigh(a, max_sweeps)
    order = np.argsort(w, kind="stable")
    w = np.asarray(w)[order]
    v = np.asarray(v)[:, order]
    scale = max(1.0, float(np.max(np.abs(a)))) if a.size else 1.0
    residual = float(np.max(np.abs(a @ v - v * w))) if a.size else 0.0
    if not converged or residual > tol * scale:
        raise NoConvergence(
            f"Jacobi did not converge (sweeps={sweeps}, residual={residual:.3g})", sweeps
        )
    rank, ambiguous = _rank_from_magnitudes(np.abs(w), rank_rtol)
    return SpectralReport(
        eigenvalues=w,
        eigenvectors=v,
        clusters=cluster_sorted(w, cluster_tol),
        psd=bool(w.size == 0 or w[0] >= -psd_tol),
        numerical_rank=rank,
        rank_ambiguous=ambiguous,
        sweeps=sweeps,
    )


def numerical_rank(m, rtol: float = RANK_RTOL) -> tuple[int, bool]:
    """Rank of a general matrix from its singular values: ``(rank, ambiguous)``."""
    a = as_matrix(m)
    if a.size == 0:
        return 0, False
    return _rank_from_magnitudes(np.linalg.svd(a, compute_uv=False), rtol)


@dataclass(frozen=True)
class PerronConfig:
    tol: float = CONVERGENCE_TOL
    max_iter: int = 200_000
    negative_tol: float = 1e-12


@dataclass(frozen=True)
class PerronPair:
    rho: float
    x: np.ndarray
    iterations: int
    residual: float

    def to_json(self) -> dict:
        return {
            "rho": self.rho,
            "x": [float(t) for t in self.x],
            "iterations": self.iterations,
            "residual": self.residual,
        }


def perron(m, cfg: PerronConfig | None = None) -> PerronPair:
    """Spectral radius and Perron vector of an entrywise nonnegative matrix.

    Iterates with ``m + I`` so that reducible or periodic matrices (such as
    ``[[0, 1], [1, 0]]``) still converge; the shift does not change the
    eigenvectors.  ``x`` is unit length with its first nonzero entry positive.
    """
    cfg = cfg or PerronConfig()
    a = as_matrix(m, square=True)
    n = a.shape[0]
    if n == 0:
        raise InputError("perron() needs a non-empty matrix")
    low = float(a.min())
    if low < -cfg.negative_tol:
        raise NegativeEntries(f"matrix has a negative entry ({low:.3g})")
    x0 = np.full(n, 1.0 / math.sqrt(n))
    rho, x, iterations, residual, converged = kernels.power_iterate(
        a, x0, cfg.tol, cfg.max_iter
    )
    if not converged:
        raise NoConvergence(
            f"power iteration residual {residual:.3g} after {iterations} iterations",
            iterations,
        )
    x = np.asarray(x, dtype=float)
    nz = np.flatnonzero(x)
    if nz.size and x[nz[0]] < 0:
        x = -x
    return PerronPair(rho=float(rho), x=x, iterations=int(iterations), residual=float(residual))
