"""Brute-force reference procedures used to cross-check the fast paths.

None of these share code with the routines they check: membership is decided
by enumerating small subsets, spectra by scanning the characteristic
polynomial (LU determinants), the minimum-norm point by projected gradient.
"""

from __future__ import annotations

import itertools

import numpy as np


def barycentric_solve(points: np.ndarray):
    """Unique weights with sum w_i p_i = 0, sum w_i = 1, or None.

    Returns None when the points are affinely dependent (no unique solution)
    or when the system is inconsistent.
    """
    k, d = points.shape
    a = np.vstack([points.T, np.ones((1, k))])
    b = np.zeros(d + 1)
    b[-1] = 1.0
    if np.linalg.matrix_rank(a, tol=1e-10 * max(1.0, np.abs(a).max())) < k:
        return None
    w, *_ = np.linalg.lstsq(a, b, rcond=None)
    if np.linalg.norm(a @ w - b) > 1e-9 * max(1.0, np.abs(points).max()):
        return None
    return w


def subset_contains_origin(points: np.ndarray, tol: float = 1e-12) -> bool:
    """o in conv(points), by checking every affinely independent subset."""
    k, d = points.shape
    for size in range(1, min(k, d + 1) + 1):
        for idx in itertools.combinations(range(k), size):
            w = barycentric_solve(points[list(idx)])
            if w is not None and np.all(w >= -tol):
                return True
    return False


def exhaustive_membership(points: np.ndarray, tol: float = 1e-12):
    """Return ``(inside, smallest_support_size)`` by enumeration of subsets <= d+1."""
    k, d = points.shape
    for size in range(1, min(k, d + 1) + 1):
        for idx in itertools.combinations(range(k), size):
            w = barycentric_solve(points[list(idx)])
            if w is not None and np.all(w >= -tol):
                return True, size
    return False, None


def char_poly(m: np.ndarray, t: float) -> float:
    """det(t I - m) by LU factorization."""
    n = m.shape[0]
    return float(np.linalg.det(t * np.eye(n) - m))


def _bisect(f, lo, hi, flo, iters=200):
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        fm = f(mid)
        if fm == 0.0:
            return mid
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def perron_root_scan(m: np.ndarray, grid: int = 4000) -> float:
    """Largest real root of det(tI - m) for an entrywise positive matrix.

    The root lies between the smallest and largest row sums; scan downward
    from above the largest for the first sign change, then bisect.
    """
    m = np.asarray(m, dtype=float)
    rows = m.sum(axis=1)
    hi = float(rows.max()) * (1.0 + 1e-9) + 1e-12
    lo = float(rows.min()) * (1.0 - 1e-9) - 1e-12
    f = lambda t: char_poly(m, t)  # noqa: E731
    ts = np.linspace(hi, lo, grid)
    prev_t, prev_f = ts[0], f(ts[0])
    for t in ts[1:]:
        ft = f(t)
        if ft == 0.0:
            return float(t)
        if (ft > 0) != (prev_f > 0):
            return _bisect(f, t, prev_t, ft)
        prev_t, prev_f = t, ft
    raise ArithmeticError("no sign change found in the row-sum interval")


def symmetric_roots_scan(m: np.ndarray, grid: int = 20000, refine: int = 3) -> np.ndarray:
    """All eigenvalues of a symmetric matrix from sign changes of det(tI - m).

    The grid covers the Gershgorin interval and is refined until n distinct
    sign changes are found (or ``refine`` attempts are exhausted).
    """
    m = np.asarray(m, dtype=float)
    n = m.shape[0]
    r = float(np.max(np.abs(m).sum(axis=1))) + 1e-6
    f = lambda t: char_poly(m, t)  # noqa: E731
    roots = []
    for attempt in range(refine):
        ts = np.linspace(-r, r, grid * 10**attempt)
        vals = np.array([f(t) for t in ts])
        roots = []
        for i in range(len(ts) - 1):
            if vals[i] == 0.0:
                roots.append(float(ts[i]))
            elif (vals[i] > 0) != (vals[i + 1] > 0) and vals[i + 1] != 0.0:
                roots.append(_bisect(f, ts[i], ts[i + 1], vals[i]))
        if len(roots) == n:
            break
    return np.array(sorted(roots))


def _project_simplex(v: np.ndarray) -> np.ndarray:
    u = np.sort(v)[::-1]
    css = np.cumsum(u) - 1.0
    ind = np.arange(1, v.size + 1)
    cond = u - css / ind > 0
    rho = ind[cond][-1]
    theta = css[cond][-1] / rho
    return np.maximum(v - theta, 0.0)


def projected_gradient_min_norm(points: np.ndarray, max_iter: int = 500_000, tol: float = 1e-16):
    """Minimize |sum l_i p_i|^2 over the simplex by projected gradient descent."""
    p = np.asarray(points, dtype=float)
    n = p.shape[0]
    g = p @ p.T
    lip = float(np.linalg.norm(g, 2)) or 1.0
    lam = np.full(n, 1.0 / n)
    for _ in range(max_iter):
        new = _project_simplex(lam - (g @ lam) / lip)
        if float(np.max(np.abs(new - lam))) <= tol:
            lam = new
            break
        lam = new
    return lam @ p, lam


def exists_interior_subset(ps, max_size: int, is_interior) -> bool:
    """Is the origin interior to the hull of some subset of size <= max_size?"""
    for size in range(1, min(ps.n, max_size) + 1):
        for idx in itertools.combinations(range(ps.n), size):
            if is_interior(ps.subset(idx)).interior:
                return True
    return False


def regular_simplex_gram(n: int) -> np.ndarray:
    """Gram of n unit vectors with pairwise dot -1/(n-1): (1 + c) I - c J."""
    c = 1.0 / (n - 1) if n > 1 else 0.0
    return (1.0 + c) * np.eye(n) - c * np.ones((n, n))


def equiangular_spectrum(n: int, a: float, b: float) -> list[float]:
    """Closed-form spectrum of a I + b J: a + n b once, a repeated n - 1 times."""
    return sorted([a + n * b] + [a] * (n - 1))
