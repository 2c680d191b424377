import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from convexcert.certificates import (
    DirectCertificate,
    LeaveOneOutSeparators,
    PerronCertificate,
    certify_noninterior,
    certify_nonmembership,
    leave_one_out_separators,
    verify_certificate,
)
from convexcert.errors import RhoNotAboveOne, SeparatorInvalid
from convexcert.generate import InstanceSpec, Kind, conic_boundary_instance, generate
from convexcert.geometry import PointSet, Provenance, SeparationMode, make_separator
from convexcert.numerics import numerical_rank, symmetric_eig


def test_one_dimensional_strict_example():
    ps = PointSet.of([[1.0], [2.0]])
    cert = certify_nonmembership(ps, LeaveOneOutSeparators([[1.0], [1.0]], "strict"))
    assert cert.shift == 1.0
    np.testing.assert_allclose(cert.h, [[2, 1], [2, 3]])
    assert abs(cert.rho - 4.0) < 1e-10
    np.testing.assert_allclose(cert.perron.x / cert.perron.x[0], [1, 2], atol=1e-9)
    y = cert.separator.y[0]
    np.testing.assert_allclose(ps.points[:, 0] * y / cert.perron.x[0], [3, 6], atol=1e-8)
    assert cert.separator.provenance is Provenance.PERRON_BUILT


def test_symmetric_strict_example():
    ps = PointSet.of([[1.0, 0.0], [0.0, 1.0]])
    cert = certify_nonmembership(ps, LeaveOneOutSeparators([[1.0, 1.0], [1.0, 1.0]], "strict"))
    y = cert.separator.y
    assert y[0] > 0 and abs(y[0] - y[1]) < 1e-12
    assert verify_certificate(ps, cert.separator).passed


def test_strict_rejects_bad_separators():
    ps = PointSet.of([[1.0, 0.0], [0.0, 1.0]])
    with pytest.raises(SeparatorInvalid):
        certify_nonmembership(ps, LeaveOneOutSeparators([[1.0, -1.0], [1.0, 1.0]], "strict"))


@given(st.integers(0, 2**32), st.integers(1, 4), st.integers(2, 12))
def test_strict_pipeline(seed, d, n):
    ps = generate(InstanceSpec(d, n, Kind.ORIGIN_OUTSIDE, seed))
    cert = certify_nonmembership(ps, leave_one_out_separators(ps, "strict"))
    assert np.all(cert.h > 0) and np.all(cert.perron.x > 0)
    assert cert.rho > cert.shift
    assert verify_certificate(ps, cert.separator, strict_margin=1e-9).passed
    assert cert.eigen_residual <= 1e-8
    vty = cert.h - cert.shift * np.eye(n)
    assert numerical_rank(vty)[0] <= d
    if n >= d + 2:
        # shift is an eigenvalue of H of multiplicity >= n - d >= 2
        spec = np.linalg.eigvals(cert.h)
        near = np.sum(np.abs(spec - cert.shift) <= 1e-7 * max(1.0, np.abs(cert.h).max()))
        assert near >= n - d


def test_verify_examples():
    ps = PointSet.of([[1.0, 0.0], [0.0, 1.0]])
    rep = verify_certificate(ps, make_separator(ps, [1.0, 1.0], "strict"))
    assert rep.passed and abs(rep.min_margin - 2**-0.5) < 1e-15
    ps = PointSet.of([[1.0, 0.0], [0.0, 0.0]])
    assert not verify_certificate(ps, make_separator(ps, [1.0, 0.0], "strict")).passed
    assert verify_certificate(ps, make_separator(ps, [1.0, 0.0], "weak")).passed
    assert not verify_certificate(ps, make_separator(ps, [0.0, 0.0], "weak")).passed


def test_verify_ignores_stored_margin():
    ps = PointSet.of([[1.0], [-1.0]])
    fake = make_separator(ps, [1.0], "strict")
    fake = type(fake)(fake.y, fake.mode, 5.0, fake.provenance)
    assert not verify_certificate(ps, fake).passed


def test_direct_branch():
    ps = PointSet.of([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]])
    cert = certify_noninterior(ps, leave_one_out_separators(ps, "weak"))
    assert isinstance(cert, DirectCertificate)
    assert verify_certificate(ps, cert.separator).passed


def test_interior_input_has_no_weak_separators():
    with pytest.raises(SeparatorInvalid):
        leave_one_out_separators(PointSet.of([[-1.0], [1.0], [2.0]]), "weak")


@pytest.mark.parametrize("d, lin", [(4, 1), (5, 1), (5, 2), (6, 1), (6, 2), (6, 3)])
@pytest.mark.parametrize("seed", range(4))
def test_weak_perron_branch(d, lin, seed):
    ps = conic_boundary_instance(d, 1000 * d + 10 * lin + seed, lin)
    assert ps.n == 2 * d + 1
    cert = certify_noninterior(ps, leave_one_out_separators(ps, "weak"))
    assert isinstance(cert, PerronCertificate)
    assert cert.rho > 1.0
    assert np.all(cert.h >= 0) and np.all(np.diag(cert.h) == 0)
    rep = verify_certificate(ps, cert.separator)
    assert rep.passed and rep.y_norm > 0 and rep.min_dot >= -1e-9
    # trace of H is zero, so the eigenvalues sum to zero
    assert abs(symmetric_eig(0.5 * (cert.h + cert.h.T)).eigenvalues.sum()) < 1e-8 * np.abs(cert.h).max()
    assert cert.eigen_residual <= 1e-8 * max(1.0, np.abs(cert.h).max())


@pytest.mark.parametrize("seed", range(20))
def test_low_dimension_boundary_goes_direct(seed):
    # With n = 2d + 1 and d <= 3 some point always lies in the cone of the others.
    d = 1 + seed % 3
    ps = generate(InstanceSpec(d, 2 * d + 1, Kind.ORIGIN_BOUNDARY, seed))
    cert = certify_noninterior(ps, leave_one_out_separators(ps, "weak"))
    assert isinstance(cert, DirectCertificate)
    assert verify_certificate(ps, cert.separator).passed


def test_rho_not_above_one_when_n_small():
    # n = 2 <= 2d: H = I + V^T Y is the zero matrix, so the trace argument gives nothing.
    ps = PointSet.of([[1.0, 0.0], [0.0, 1.0]])
    seps = LeaveOneOutSeparators([[-1.0, 0.0], [0.0, -1.0]], "weak")
    with pytest.raises(RhoNotAboveOne):
        certify_noninterior(ps, seps)


def test_weak_rejects_bad_separators():
    ps = PointSet.of([[1.0, 0.0], [-1.0, 0.0]])
    with pytest.raises(SeparatorInvalid):
        certify_noninterior(ps, LeaveOneOutSeparators([[1.0, 1.0], [1.0, 1.0]], "weak"))


def test_json_shape():
    ps = PointSet.of([[1.0], [2.0]])
    obj = certify_nonmembership(ps, LeaveOneOutSeparators([[1.0], [1.0]], "strict")).to_json()
    assert set(obj) >= {"kind", "lambda", "rho", "x", "y_star", "H", "margin"}
    assert obj["H"]["rows"] == 2 and obj["kind"] == "caratheodory"
