"""Reference (numpy) implementations of the hot loops.

Each function here has a twin in ``_ckernels.pyx`` with the same signature
and the same arithmetic order; the compiled one is preferred when it built.
"""

import math

import numpy as np

_EPS = np.finfo(float).eps


def jacobi_eigh(a, max_sweeps):
    """Cyclic-by-row Jacobi eigensolver for a symmetric matrix.

    Returns ``(w, v, sweeps, converged)`` with unsorted eigenvalues ``w`` and
    eigenvectors in the columns of ``v``.  ``a`` is not modified.
    """
    a = np.array(a, dtype=float, order="C")
    n = a.shape[0]
    v = np.eye(n)
    fro2 = float(np.sum(a * a))
    if n < 2 or fro2 == 0.0:
        return a.diagonal().copy(), v, 0, True
    target = (4.0 * _EPS) ** 2 * fro2
    for sweep in range(1, max_sweeps + 1):
        off = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                off += a[p, q] * a[p, q]
        if off <= target:
            return a.diagonal().copy(), v, sweep - 1, True
        rotated = False
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                app = a[p, p]
                aqq = a[q, q]
                g = 100.0 * abs(apq)
                if sweep > 4 and abs(app) + g == abs(app) and abs(aqq) + g == abs(aqq):
                    a[p, q] = 0.0
                    a[q, p] = 0.0
                    continue
                theta = (aqq - app) / (2.0 * apq)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
                    if theta < 0.0:
                        t = -t
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                cp = a[:, p].copy()
                cq = a[:, q].copy()
                a[:, p] = c * cp - s * cq
                a[:, q] = s * cp + c * cq
                rp = a[p, :].copy()
                rq = a[q, :].copy()
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
                a[p, q] = 0.0
                a[q, p] = 0.0
                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
                rotated = True
        if not rotated:
            return a.diagonal().copy(), v, sweep, True
    return a.diagonal().copy(), v, max_sweeps, False


def power_iterate(m, x0, tol, max_iter):
    """Power iteration on ``m + I``.

    Returns ``(rho, x, iterations, residual, converged)`` where ``rho`` is the
    Rayleigh quotient of ``m`` (not of the shifted matrix) and ``residual`` is
    ``max|m x - rho x|`` for the returned unit vector ``x``.
    """
    m = np.ascontiguousarray(m, dtype=float)
    x = np.array(x0, dtype=float)
    x /= math.sqrt(float(x @ x))
    rho = 0.0
    res = math.inf
    for it in range(1, max_iter + 1):
        mx = m @ x
        rho = float(x @ mx)
        res = float(np.max(np.abs(mx - rho * x)))
        if res <= tol:
            return rho, x, it, res, True
        y = mx + x
        x = y / math.sqrt(float(y @ y))
    return rho, x, max_iter, res, False


def pivot(t, r, c):
    t[r, :] /= t[r, c]
    col = t[:, c].copy()
    col[r] = 0.0
    nz = np.nonzero(col)[0]
    if nz.size:
        t[nz, :] -= np.outer(col[nz], t[r, :])
    t[nz, c] = 0.0
    t[r, c] = 1.0


def simplex_run(t, basis, ncols, tol, max_iter):
    """Bland-rule primal simplex on a canonical tableau, in place.

    ``t`` has constraint rows first and the reduced-cost row last; the last
    column is the right-hand side.  Only the first ``ncols`` columns may
    enter.  Returns ``(status, iterations)`` with status 0 optimal,
    1 unbounded, 2 iteration limit.
    """
    m = t.shape[0] - 1
    rhs = t.shape[1] - 1
    for it in range(max_iter):
        costs = t[m, :ncols]
        neg = np.nonzero(costs < -tol)[0]
        if neg.size == 0:
            return 0, it
        enter = int(neg[0])
        leave = -1
        best = 0.0
        for i in range(m):
            a = t[i, enter]
            if a > tol:
                b = t[i, rhs]
                r = (b if b > 0.0 else 0.0) / a
                if leave < 0:
                    leave, best = i, r
                else:
                    slack = 1e-12 * (1.0 + abs(best))
                    if r < best - slack:
                        leave, best = i, r
                    elif r <= best + slack and basis[i] < basis[leave]:
                        leave, best = i, r
        if leave < 0:
            return 1, it
        pivot(t, leave, enter)
        basis[leave] = enter
    return 2, max_iter
