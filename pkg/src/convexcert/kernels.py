"""Kernel backend selection.

The compiled extension ``_ckernels`` is used when it was built; otherwise the
numpy implementations in ``_pykernels`` are used.  Both expose::

    jacobi_eigh(a, max_sweeps) -> (w, v, sweeps, converged)
    power_iterate(m, x0, tol, max_iter) -> (rho, x, iterations, residual, converged)
    simplex_run(tableau, basis, ncols, tol, max_iter) -> (status, iterations)

:func:`use` switches the process-wide backend, mostly for tests and the
benchmark.
"""

from contextlib import contextmanager

from . import _pykernels

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

BACKENDS = {"python": _pykernels}
if _ckernels is not None:
    BACKENDS["compiled"] = _ckernels

_active = _ckernels if _ckernels is not None else _pykernels


def backend_name():
    return "compiled" if _active is _ckernels and _ckernels is not None else "python"


def get(name=None):
    """Return the kernel module called ``name`` (default: the active one)."""
    if name is None:
        return _active
    try:
        return BACKENDS[name]
    except KeyError:
        raise ValueError(f"unknown or unavailable kernel backend {name!r}") from None


def set_backend(name):
    global _active
    _active = get(name)


@contextmanager
def use(name):
    global _active
    previous = _active
    _active = get(name)
    try:
        yield _active
    finally:
        _active = previous


def jacobi_eigh(a, max_sweeps):
    return _active.jacobi_eigh(a, max_sweeps)


def power_iterate(m, x0, tol, max_iter):
    return _active.power_iterate(m, x0, tol, max_iter)


def simplex_run(tableau, basis, ncols, tol, max_iter):
    return _active.simplex_run(tableau, basis, ncols, tol, max_iter)
