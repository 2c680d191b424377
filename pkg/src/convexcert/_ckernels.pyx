# cython: language_level=3
"""Compiled twins of the loops in ``_pykernels``; same signatures and results."""

import numpy as np

from libc.math cimport fabs, sqrt, INFINITY

cdef double _EPS = 2.220446049250313e-16


cdef object _diag(double[:, ::1] a):
    cdef Py_ssize_t k, n = a.shape[0]
    out = np.empty(n)
    cdef double[::1] o = out
    for k in range(n):
        o[k] = a[k, k]
    return out


def jacobi_eigh(a_in, int max_sweeps):
    cdef double[:, ::1] a = np.array(a_in, dtype=float, order="C")
    cdef Py_ssize_t n = a.shape[0]
    v_arr = np.eye(n)
    cdef double[:, ::1] v = v_arr
    cdef Py_ssize_t p, q, k
    cdef int sweep
    cdef double fro2 = 0.0, off, target, apq, app, aqq, g, theta, t, c, s
    cdef double x, y
    cdef bint rotated
    for p in range(n):
        for q in range(n):
            fro2 += a[p, q] * a[p, q]
    if n < 2 or fro2 == 0.0:
        return _diag(a), v_arr, 0, True
    target = (4.0 * _EPS) * (4.0 * _EPS) * fro2
    for sweep in range(1, max_sweeps + 1):
        off = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                off += a[p, q] * a[p, q]
        if off <= target:
            return _diag(a), v_arr, sweep - 1, True
        rotated = False
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                app = a[p, p]
                aqq = a[q, q]
                g = 100.0 * fabs(apq)
                if sweep > 4 and fabs(app) + g == fabs(app) and fabs(aqq) + g == fabs(aqq):
                    a[p, q] = 0.0
                    a[q, p] = 0.0
                    continue
                theta = (aqq - app) / (2.0 * apq)
                if fabs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = 1.0 / (fabs(theta) + sqrt(theta * theta + 1.0))
                    if theta < 0.0:
                        t = -t
                c = 1.0 / sqrt(t * t + 1.0)
                s = t * c
                for k in range(n):
                    x = a[k, p]
                    y = a[k, q]
                    a[k, p] = c * x - s * y
                    a[k, q] = s * x + c * y
                for k in range(n):
                    x = a[p, k]
                    y = a[q, k]
                    a[p, k] = c * x - s * y
                    a[q, k] = s * x + c * y
                a[p, q] = 0.0
                a[q, p] = 0.0
                for k in range(n):
                    x = v[k, p]
                    y = v[k, q]
                    v[k, p] = c * x - s * y
                    v[k, q] = s * x + c * y
                rotated = True
        if not rotated:
            return _diag(a), v_arr, sweep, True
    return _diag(a), v_arr, max_sweeps, False


def power_iterate(m_in, x0, double tol, long max_iter):
    cdef double[:, ::1] m = np.ascontiguousarray(m_in, dtype=float)
    cdef Py_ssize_t n = m.shape[0]
    x_arr = np.array(x0, dtype=float)
    cdef double[::1] x = x_arr
    mx_arr = np.empty(n)
    cdef double[::1] mx = mx_arr
    cdef Py_ssize_t i, j
    cdef long it
    cdef double s, rho = 0.0, res = INFINITY, d, nrm = 0.0
    for i in range(n):
        nrm += x[i] * x[i]
    nrm = sqrt(nrm)
    for i in range(n):
        x[i] /= nrm
    for it in range(1, max_iter + 1):
        for i in range(n):
            s = 0.0
            for j in range(n):
                s += m[i, j] * x[j]
            mx[i] = s
        rho = 0.0
        for i in range(n):
            rho += x[i] * mx[i]
        res = 0.0
        for i in range(n):
            d = fabs(mx[i] - rho * x[i])
            if d > res:
                res = d
        if res <= tol:
            return rho, x_arr, it, res, True
        nrm = 0.0
        for i in range(n):
            mx[i] += x[i]
            nrm += mx[i] * mx[i]
        nrm = sqrt(nrm)
        for i in range(n):
            x[i] = mx[i] / nrm
    return rho, x_arr, max_iter, res, False


cdef void _pivot(double[:, ::1] t, Py_ssize_t r, Py_ssize_t c):
    cdef Py_ssize_t i, j
    cdef Py_ssize_t rows = t.shape[0], cols = t.shape[1]
    cdef double piv = t[r, c], f
    for j in range(cols):
        t[r, j] /= piv
    for i in range(rows):
        if i == r:
            continue
        f = t[i, c]
        if f != 0.0:
            for j in range(cols):
                t[i, j] -= f * t[r, j]
            t[i, c] = 0.0
    t[r, c] = 1.0


def pivot(t_in, Py_ssize_t r, Py_ssize_t c):
    _pivot(t_in, r, c)


def simplex_run(t_in, basis_in, Py_ssize_t ncols, double tol, Py_ssize_t max_iter):
    cdef double[:, ::1] t = t_in
    cdef Py_ssize_t[::1] basis = basis_in
    cdef Py_ssize_t m = t.shape[0] - 1
    cdef Py_ssize_t rhs = t.shape[1] - 1
    cdef Py_ssize_t it, i, j, enter, leave
    cdef double a, b, r, best, slack
    for it in range(max_iter):
        enter = -1
        for j in range(ncols):
            if t[m, j] < -tol:
                enter = j
                break
        if enter < 0:
            return 0, it
        leave = -1
        best = 0.0
        for i in range(m):
            a = t[i, enter]
            if a > tol:
                b = t[i, rhs]
                r = (b if b > 0.0 else 0.0) / a
                if leave < 0:
                    leave = i
                    best = r
                else:
                    slack = 1e-12 * (1.0 + fabs(best))
                    if r < best - slack:
                        leave = i
                        best = r
                    elif r <= best + slack and basis[i] < basis[leave]:
                        leave = i
                        best = r
        if leave < 0:
            return 1, it
        _pivot(t, leave, enter)
        basis[leave] = enter
    return 2, max_iter
