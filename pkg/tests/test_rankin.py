import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from convexcert.errors import ModeViolated, NotSymmetric, ZeroVector
from convexcert.geometry import PointSet
from convexcert.numerics import gram
from convexcert.oracles import equiangular_spectrum, regular_simplex_gram
from convexcert.rankin import AngleMode, check_angles, extremal_config, spectral_witness
from convexcert.rng import Xoshiro256

S3 = 3**0.5 / 2


def test_planar_simplex_obtuse():
    ps = PointSet.of([[1.0, 0.0], [-0.5, S3], [-0.5, -S3]])
    rep = check_angles(ps, "obtuse")
    assert rep.predicate_holds and rep.n == rep.bound == 3
    assert abs(rep.max_pair_dot + 0.5) < 1e-12


def test_cross_polytope_nonacute(square):
    rep = check_angles(square, "nonacute")
    assert rep.predicate_holds and rep.n == rep.bound == 4
    extra = PointSet.of(np.vstack([square.points, [[2**-0.5, 2**-0.5]]]))
    assert not check_angles(extra, "nonacute").predicate_holds


def test_obtuse_uses_raw_vectors_nonacute_normalizes():
    ps = PointSet.of([[10.0, 0.0], [-0.1, 0.0]])
    assert check_angles(ps, "obtuse").predicate_holds
    rep = check_angles(ps, "nonacute")
    assert rep.normalized and abs(rep.max_pair_dot + 1.0) < 1e-15


def test_zero_vector():
    with pytest.raises(ZeroVector):
        check_angles(PointSet.of([[1.0, 0.0], [0.0, 0.0]]), "obtuse")


def test_extremal_small_cases():
    np.testing.assert_allclose(extremal_config(1, "obtuse").points, [[1.0], [-1.0]])
    np.testing.assert_array_equal(
        extremal_config(2, "nonacute").points, [[1, 0], [-1, 0], [0, 1], [0, -1]]
    )


@pytest.mark.parametrize("d", [2, 5, 9])
def test_extremal_simplex_gram(d):
    g = gram(extremal_config(d, "obtuse").points)
    expected = (1 + 1 / d) * np.eye(d + 1) - np.ones((d + 1, d + 1)) / d
    assert np.max(np.abs(g - expected)) <= 1e-12


@pytest.mark.parametrize("d", range(1, 17))
@pytest.mark.parametrize("mode", list(AngleMode))
def test_extremal_tight(d, mode):
    rep = check_angles(extremal_config(d, mode), mode)
    assert rep.predicate_holds and rep.n == rep.bound


def test_gram4_unrealizable():
    g = np.full((4, 4), -1 / 3)
    np.fill_diagonal(g, 1.0)
    w = spectral_witness(g, 2, "obtuse")
    assert w.realizable is False and w.verdict == "unrealizable"
    np.testing.assert_allclose(w.gram_spectrum.eigenvalues, equiangular_spectrum(4, 4 / 3, -1 / 3), atol=1e-10)
    assert w.gram_spectrum.numerical_rank == 3
    assert w.details["h_positive"]
    # at d = 3 the same matrix is the regular simplex: realizable
    assert spectral_witness(g, 3, "obtuse").realizable is True


def test_square_gram_realizable(square):
    g = gram(square.points)
    w = spectral_witness(g, 2, "nonacute")
    assert w.realizable is True
    assert w.details["trace"] == 0.0


def test_identity_nonacute():
    w = spectral_witness(np.eye(3), 3, "nonacute")
    assert w.realizable is True and w.details["within_bound"]


def test_witness_errors():
    with pytest.raises(NotSymmetric):
        spectral_witness([[1.0, 0.5], [0.0, 1.0]], 2)
    with pytest.raises(ModeViolated):
        spectral_witness([[1.0, 0.5], [0.5, 1.0]], 2, "obtuse")
    with pytest.raises(ModeViolated):
        spectral_witness([[2.0, 0.0], [0.0, 1.0]], 2, "nonacute")


@given(st.integers(1, 6), st.integers(0, 2**32))
def test_too_many_obtuse_never_accepted(d, seed):
    g = Xoshiro256(seed)
    u = g.normal_array(d + 2, d)
    assert not check_angles(PointSet(d, u), "obtuse").predicate_holds
    s = np.diag(g.uniform_array(d + 2, lo=0.5, hi=1.5))
    w = spectral_witness(s @ regular_simplex_gram(d + 2) @ s, d, "obtuse")
    assert w.realizable is False


@given(st.integers(1, 8), st.integers(1, 10), st.integers(0, 2**32))
def test_gram_of_points_is_realizable(d, n, seed):
    p = Xoshiro256(seed).normal_array(n, d)
    assert spectral_witness(gram(p), d).realizable is not False


@given(st.integers(1, 8), st.integers(0, 2**32))
def test_obtuse_positivity_bridge(d, seed):
    ps = extremal_config(d, "obtuse")
    scales = Xoshiro256(seed).uniform_array(d + 1, lo=0.2, hi=3.0)
    scaled = PointSet(d, ps.points * scales[:, None])
    assert check_angles(scaled, "obtuse").predicate_holds
    g = gram(scaled.points)
    lam = np.max(np.diag(g)) + 1.0
    assert np.all(lam * np.eye(d + 1) - g > 0)
