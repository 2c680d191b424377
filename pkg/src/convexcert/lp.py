"""Two-phase dense simplex with Bland's anti-cycling rule.

Sized for the small feasibility problems the geometry module poses (tens of
variables), so everything is a dense tableau.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import kernels
from .errors import InputError, SolverFailure

LE, EQ, GE = "<=", "=", ">="
_SENSES = {LE, EQ, GE}

PIVOT_TOL = 1e-9
FEAS_TOL = 1e-9


class LpStatus(enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass
class LpProblem:
    objective: np.ndarray
    a: np.ndarray
    senses: Sequence[str]
    rhs: np.ndarray
    lower: np.ndarray | None = None
    upper: np.ndarray | None = None
    maximize: bool = False

    def __post_init__(self):
        self.objective = np.asarray(self.objective, dtype=float).ravel()
        nv = self.objective.size
        self.a = np.asarray(self.a, dtype=float).reshape(-1, nv)
        self.rhs = np.asarray(self.rhs, dtype=float).ravel()
        self.senses = list(self.senses)
        if len(self.senses) != self.a.shape[0] or self.rhs.size != self.a.shape[0]:
            raise InputError("constraint matrix, senses and rhs disagree in length")
        if any(s not in _SENSES for s in self.senses):
            raise InputError(f"constraint senses must be one of {sorted(_SENSES)}")
        self.lower = (
            np.zeros(nv) if self.lower is None else np.asarray(self.lower, dtype=float).ravel()
        )
        self.upper = (
            np.full(nv, np.inf) if self.upper is None else np.asarray(self.upper, dtype=float).ravel()
        )
        if self.lower.size != nv or self.upper.size != nv:
            raise InputError("bounds must have one entry per variable")
        for arr in (self.objective, self.a, self.rhs):
            if not np.all(np.isfinite(arr)):
                raise InputError("LP data must be finite")
        if np.any(np.isnan(self.lower)) or np.any(np.isnan(self.upper)):
            raise InputError("LP bounds must not be NaN")

    @property
    def n_vars(self) -> int:
        return self.objective.size


@dataclass
class LpResult:
    status: LpStatus
    value: float | None = None
    x: np.ndarray | None = None
    # Optimal phase-one objective (sum of artificial variables); 0 when no
    # phase one was needed.
    infeasibility: float = 0.0
    iterations: int = 0
    extra: dict = field(default_factory=dict)

    @property
    def optimal(self) -> bool:
        return self.status is LpStatus.OPTIMAL


def _standardize(p: LpProblem):
    """Rewrite bounded variables as ``x = offset + M z`` with ``z >= 0``."""
    nv = p.n_vars
    offset = np.zeros(nv)
    cols = []  # (var index, sign)
    extra_rows = []  # (column index in z, bound)
    for i in range(nv):
        lo, hi = p.lower[i], p.upper[i]
        if math.isfinite(lo):
            offset[i] = lo
            cols.append((i, 1.0))
            if math.isfinite(hi):
                extra_rows.append((len(cols) - 1, hi - lo))
        elif math.isfinite(hi):
            offset[i] = hi
            cols.append((i, -1.0))
        else:
            cols.append((i, 1.0))
            cols.append((i, -1.0))
    mz = np.zeros((nv, len(cols)))
    for k, (i, sgn) in enumerate(cols):
        mz[i, k] = sgn
    return offset, mz, extra_rows


def lp_solve(
    p: LpProblem, *, tol: float = FEAS_TOL, pivot_tol: float = PIVOT_TOL, max_iter: int | None = None
) -> LpResult:
    if np.any(p.lower > p.upper):
        return LpResult(LpStatus.INFEASIBLE, infeasibility=math.inf)
    offset, mz, extra_rows = _standardize(p)
    nz = mz.shape[1]

    a = p.a @ mz
    b = p.rhs - p.a @ offset
    senses = list(p.senses)
    if extra_rows:
        ea = np.zeros((len(extra_rows), nz))
        for r, (k, bound) in enumerate(extra_rows):
            ea[r, k] = 1.0
        a = np.vstack([a, ea])
        b = np.concatenate([b, [bound for _, bound in extra_rows]])
        senses += [LE] * len(extra_rows)
    cost = mz.T @ p.objective
    if p.maximize:
        cost = -cost

    # Normalize to b >= 0.
    for r in range(len(b)):
        if b[r] < 0:
            a[r] = -a[r]
            b[r] = -b[r]
            senses[r] = {LE: GE, GE: LE, EQ: EQ}[senses[r]]

    m = len(b)
    n_slack = sum(1 for s in senses if s != EQ)
    n_art = sum(1 for s in senses if s != LE)
    art_start = nz + n_slack
    width = art_start + n_art
    t = np.zeros((m + 1, width + 1))
    t[:m, :nz] = a
    t[:m, -1] = b
    basis = np.empty(m, dtype=np.intp)
    si, ai = nz, art_start
    art_rows = []
    for r, s in enumerate(senses):
        if s == LE:
            t[r, si] = 1.0
            basis[r] = si
            si += 1
        else:
            if s == GE:
                t[r, si] = -1.0
                si += 1
            t[r, ai] = 1.0
            basis[r] = ai
            art_rows.append(r)
            ai += 1

    limit = max_iter if max_iter is not None else 50 * (m + width + 10)
    total_iters = 0
    infeasibility = 0.0
    scale = 1.0 + (float(np.max(np.abs(b))) if m else 0.0)

    if n_art:
        t[m, :] = 0.0
        t[m, art_start:width] = 1.0
        for r in art_rows:
            t[m, :] -= t[r, :]
        status, its = kernels.simplex_run(t, basis, width, pivot_tol, limit)
        total_iters += its
        if status != 0:
            raise SolverFailure(f"phase one stopped with status {status} after {its} pivots")
        infeasibility = max(0.0, -float(t[m, -1]))
        if infeasibility > tol * scale:
            return LpResult(LpStatus.INFEASIBLE, infeasibility=infeasibility, iterations=total_iters)
        # Drive remaining artificials out of the basis; drop redundant rows.
        keep = []
        for r in range(m):
            if basis[r] >= art_start:
                row = np.abs(t[r, :art_start])
                j = int(np.argmax(row)) if art_start else 0
                if art_start and row[j] > pivot_tol:
                    kernels.get().pivot(t, r, j)
                    basis[r] = j
                    keep.append(r)
            else:
                keep.append(r)
        if len(keep) < m:
            t = np.ascontiguousarray(np.vstack([t[keep], t[m:m + 1]]))
            basis = np.ascontiguousarray(basis[keep])
            m = len(keep)

    # Phase two over the non-artificial columns.
    full_cost = np.zeros(t.shape[1] - 1)
    full_cost[:nz] = cost
    t[m, :-1] = full_cost
    t[m, -1] = 0.0
    for r in range(m):
        cb = full_cost[basis[r]]
        if cb != 0.0:
            t[m, :] -= cb * t[r, :]
    t[m, art_start:-1] = 0.0
    status, its = kernels.simplex_run(t, basis, art_start, pivot_tol, limit)
    total_iters += its
    if status == 1:
        return LpResult(LpStatus.UNBOUNDED, infeasibility=infeasibility, iterations=total_iters)
    if status != 0:
        raise SolverFailure(f"phase two hit the iteration limit ({its} pivots)")

    z = np.zeros(t.shape[1] - 1)
    for r in range(m):
        z[basis[r]] = t[r, -1]
    z = np.maximum(z[:nz], 0.0)
    x = offset + mz @ z
    value = float(p.objective @ x)
    _check_feasible(p, x, tol)
    return LpResult(LpStatus.OPTIMAL, value=value, x=x, infeasibility=infeasibility, iterations=total_iters)


def _check_feasible(p: LpProblem, x: np.ndarray, tol: float) -> None:
    if not np.all(np.isfinite(x)):
        raise SolverFailure("simplex produced a non-finite solution")
    lhs = p.a @ x
    scale = 1.0 + float(np.max(np.abs(p.a), initial=0.0)) * (1.0 + float(np.max(np.abs(x), initial=0.0)))
    slack = 1e3 * tol * scale
    for r, s in enumerate(p.senses):
        d = lhs[r] - p.rhs[r]
        if (s == LE and d > slack) or (s == GE and d < -slack) or (s == EQ and abs(d) > slack):
            raise SolverFailure(f"row {r} violated by {d:.3g} at the reported optimum")
    if np.any(x < p.lower - slack) or np.any(x > p.upper + slack):
        raise SolverFailure("variable bound violated at the reported optimum")
