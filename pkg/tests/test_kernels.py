import numpy as np
import pytest

from convexcert import kernels
from convexcert.lp import LpProblem, lp_solve

compiled = pytest.mark.skipif("compiled" not in kernels.BACKENDS, reason="extension not built")


def _sym(rng, n):
    a = rng.normal(size=(n, n))
    return a + a.T


def test_python_backend_always_present():
    assert "python" in kernels.BACKENDS


def test_use_restores_backend():
    before = kernels.backend_name()
    with kernels.use("python"):
        assert kernels.backend_name() == "python"
    assert kernels.backend_name() == before


def test_unknown_backend():
    with pytest.raises(ValueError):
        kernels.set_backend("fortran")


@compiled
@pytest.mark.parametrize("n", [1, 2, 5, 12, 30])
def test_jacobi_backends_agree(rng, n):
    a = _sym(rng, n)
    out = {}
    for name in ("python", "compiled"):
        with kernels.use(name):
            out[name] = kernels.jacobi_eigh(a.copy(), 100)
    wp, vp, sp, cp = out["python"]
    wc, vc, sc, cc = out["compiled"]
    assert cp and cc and sp == sc
    np.testing.assert_allclose(np.sort(wp), np.sort(wc), atol=1e-12)
    np.testing.assert_allclose(np.sort(wc), np.linalg.eigvalsh(a), atol=1e-10)


@compiled
@pytest.mark.parametrize("n", [1, 3, 9])
def test_power_backends_agree(rng, n):
    m = rng.uniform(0.1, 1.0, size=(n, n))
    x0 = np.ones(n) / np.sqrt(n)
    res = {}
    for name in ("python", "compiled"):
        with kernels.use(name):
            res[name] = kernels.power_iterate(m, x0.copy(), 1e-11, 100000)
    assert res["python"][2] == res["compiled"][2]
    assert abs(res["python"][0] - res["compiled"][0]) < 1e-12
    np.testing.assert_allclose(res["python"][1], res["compiled"][1], atol=1e-12)


@compiled
def test_simplex_backends_agree(rng):
    for _ in range(20):
        m, n = 4, 7
        a = rng.uniform(0, 1, size=(m, n))
        b = rng.uniform(1, 2, size=m)
        c = rng.normal(size=n)
        p = LpProblem(c, a, ["<="] * m, b, maximize=True)
        with kernels.use("python"):
            rp = lp_solve(p)
        with kernels.use("compiled"):
            rc = lp_solve(p)
        assert rp.status == rc.status
        assert rp.iterations == rc.iterations
        np.testing.assert_allclose(rp.x, rc.x, atol=1e-12)


@pytest.mark.parametrize("backend", sorted(kernels.BACKENDS))
def test_pipeline_under_each_backend(backend):
    from convexcert import acceptance

    with kernels.use(backend):
        assert acceptance.criterion_1(5, count=40).passed
        assert acceptance.criterion_3(5, count=20).passed
        assert acceptance.criterion_8(5, count=15).passed
