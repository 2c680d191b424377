"""The seeded acceptance suite behind ``convexcert selftest``.

Each criterion is a deterministic function of the master seed and returns a
:class:`CriterionResult`.  Reports contain no timings, so two runs with the
same seed serialize identically; wall-clock times are kept on the side.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .certificates import (
    DirectCertificate,
    PerronCertificate,
    certify_noninterior,
    certify_nonmembership,
    leave_one_out_separators,
    verify_certificate,
)
from .generate import InstanceSpec, Kind, conic_boundary_instance, generate, generate_with_witness
from .geometry import PointSet, SeparationMode, contains_origin, is_interior
from .numerics import gram, perron, symmetric_eig
from .oracles import (
    exhaustive_membership,
    perron_root_scan,
    regular_simplex_gram,
    subset_contains_origin,
)
from .rankin import AngleMode, check_angles, extremal_config, spectral_witness
from .reduction import ReductionMode, reduce_caratheodory, reduce_steinitz
from .rng import Xoshiro256, derive_seed

DEFAULT_SEED = 20240917

# Pinned thresholds.
CARATHEODORY_RESIDUAL = 1e-7
CARATHEODORY_BUDGET_S = 10.0
STEINITZ_BUDGET_S = 30.0
STRICT_MARGIN = 1e-9
EIGEN_RESIDUAL = 1e-8
WEAK_DOT = -1e-9
SPECTRUM_TOL = 1e-10
TRACE_TOL = 1e-12
PERRON_ORACLE_TOL = 1e-8
EIG_TRACE_TOL = 1e-10


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: dict
    seconds: float = field(default=0.0, compare=False)
    timed_seconds: float = field(default=0.0, compare=False)  # time inside the measured calls

    def to_json(self) -> dict:
        return {"id": self.number, "name": self.name, "passed": self.passed, "detail": self.detail}


def _rng(seed, *labels):
    return Xoshiro256(derive_seed(seed, *labels))


def criterion_1(seed: int, count: int = 500) -> CriterionResult:
    """Caratheodory reduction to <= d+1 points."""
    failures, worst_res, max_ratio, timed = [], 0.0, 0.0, 0.0
    for i in range(count):
        r = _rng(seed, 1, i)
        d = r.integers(1, 8)
        n = r.integers(d + 2, 40)
        ps, w = generate_with_witness(InstanceSpec(d, n, Kind.ORIGIN_INSIDE, derive_seed(seed, 1, i, 1)))
        t0 = time.perf_counter()
        res = reduce_caratheodory(ps, w, ReductionMode.FAST)
        timed += time.perf_counter() - t0
        resid = res.witness.residual(ps)
        worst_res = max(worst_res, resid)
        max_ratio = max(max_ratio, len(res.support) / (d + 1))
        if len(res.support) > d + 1 or resid > CARATHEODORY_RESIDUAL or np.any(res.witness.weights <= 0):
            failures.append(i)
    detail = {
        "instances": count,
        "failures": failures,
        "max_residual": worst_res,
        "max_support_over_bound": max_ratio,
        "budget_s": CARATHEODORY_BUDGET_S,
    }
    return CriterionResult(1, "caratheodory-bound", not failures, detail, timed_seconds=timed)


def criterion_2(seed: int, count: int = 200) -> CriterionResult:
    """Steinitz reduction to <= 2d points, interiority re-verified."""
    failures, timed = [], 0.0
    sizes = []
    for i in range(count):
        r = _rng(seed, 2, i)
        d = r.integers(1, 5)
        n = r.integers(2 * d + 1, 25)
        ps = generate(InstanceSpec(d, n, Kind.ORIGIN_INTERIOR, derive_seed(seed, 2, i, 1)))
        t0 = time.perf_counter()
        res = reduce_steinitz(ps)
        timed += time.perf_counter() - t0
        sizes.append(len(res.support) / (2 * d))
        if len(res.support) > 2 * d or not is_interior(ps.subset(res.support)).interior:
            failures.append(i)
    detail = {
        "instances": count,
        "failures": failures,
        "max_support_over_bound": max(sizes),
        "budget_s": STEINITZ_BUDGET_S,
    }
    return CriterionResult(2, "steinitz-bound", not failures, detail, timed_seconds=timed)


def criterion_3(seed: int, count: int = 200) -> CriterionResult:
    """Strict Perron certificates for non-membership."""
    failures, min_margin, worst_eig = [], np.inf, 0.0
    for i in range(count):
        r = _rng(seed, 3, i)
        d = r.integers(1, 4)
        n = r.integers(2, 12)
        ps = generate(InstanceSpec(d, n, Kind.ORIGIN_OUTSIDE, derive_seed(seed, 3, i, 1)))
        cert = certify_nonmembership(ps, leave_one_out_separators(ps, SeparationMode.STRICT))
        rep = verify_certificate(ps, cert.separator, strict_margin=STRICT_MARGIN)
        min_margin = min(min_margin, rep.min_margin)
        worst_eig = max(worst_eig, cert.eigen_residual)
        if not rep.passed or cert.eigen_residual > EIGEN_RESIDUAL:
            failures.append(i)
    detail = {
        "instances": count,
        "failures": failures,
        "min_normalized_margin": float(min_margin),
        "max_eigen_residual": worst_eig,
    }
    return CriterionResult(3, "perron-strict-certificate", not failures, detail)


# (d, lineality) pairs for which a boundary set of 2d+1 points with no point
# in the cone of the others exists; only these reach the Perron branch.
CONIC_SHAPES = ((4, 1), (5, 1), (5, 2), (6, 1), (6, 2), (6, 3))


def criterion_4(seed: int, count: int = 100, low_dim: int = 30) -> CriterionResult:
    """Weak Perron certificates on boundary instances with n = 2d+1.

    For d <= 3 every such instance has a point in the cone of the others,
    which forces the direct branch; those are checked separately.
    """
    failures, min_rho, min_dot = [], np.inf, np.inf
    for i in range(count):
        r = _rng(seed, 4, i)
        d, lin = CONIC_SHAPES[r.integers(0, len(CONIC_SHAPES) - 1)]
        ps = conic_boundary_instance(d, derive_seed(seed, 4, i, 1), lin)
        cert = certify_noninterior(ps, leave_one_out_separators(ps, SeparationMode.WEAK))
        if not isinstance(cert, PerronCertificate):
            failures.append(i)
            continue
        rep = verify_certificate(ps, cert.separator, tol=-WEAK_DOT)
        min_rho = min(min_rho, cert.rho)
        min_dot = min(min_dot, rep.min_dot / rep.y_norm if rep.y_norm else -np.inf)
        if not (cert.rho > 1.0 and rep.y_norm > 0.0 and rep.min_dot >= WEAK_DOT and rep.passed):
            failures.append(i)
    direct_fail = []
    for i in range(low_dim):
        r = _rng(seed, 4, 1000 + i)
        d = r.integers(1, 3)
        ps = generate(InstanceSpec(d, 2 * d + 1, Kind.ORIGIN_BOUNDARY, derive_seed(seed, 4, 1000 + i, 1)))
        cert = certify_noninterior(ps, leave_one_out_separators(ps, SeparationMode.WEAK))
        ok = isinstance(cert, DirectCertificate) and verify_certificate(ps, cert.separator).passed
        if not ok:
            direct_fail.append(i)
    detail = {
        "instances": count,
        "failures": failures,
        "min_rho": float(min_rho),
        "min_normalized_dot": float(min_dot),
        "low_dim_instances": low_dim,
        "low_dim_direct_failures": direct_fail,
    }
    return CriterionResult(4, "perron-weak-certificate", not failures and not direct_fail, detail)


def _descend_obtuse(r: Xoshiro256, d: int, steps: int = 60) -> np.ndarray:
    """Push d+2 random unit vectors toward pairwise obtuse by gradient steps."""
    u = r.normal_array(d + 2, d)
    u /= np.linalg.norm(u, axis=1)[:, None]
    for _ in range(steps):
        g = u @ u.T
        np.fill_diagonal(g, -np.inf)
        viol = np.maximum(g + 0.05, 0.0)
        u = u - 0.2 * (viol @ u)
        u /= np.linalg.norm(u, axis=1)[:, None]
    return u


def criterion_5(seed: int, attempts: int = 1000, max_dim: int = 16) -> CriterionResult:
    """Rankin bounds: tight extremal sets, sound rejection, closed-form spectrum."""
    extremal_bad = []
    for d in range(1, max_dim + 1):
        for mode in AngleMode:
            rep = check_angles(extremal_config(d, mode), mode)
            if not (rep.predicate_holds and rep.n == rep.bound):
                extremal_bad.append([d, mode.value])
    accepted, indeterminate = [], 0
    for i in range(attempts):
        r = _rng(seed, 5, i)
        d = r.integers(1, 6)
        n = d + 2
        if i % 2 == 0:
            ps = PointSet(d, _descend_obtuse(r, d))
            if check_angles(ps, AngleMode.OBTUSE).predicate_holds:
                accepted.append(i)
        else:
            # Congruent scalings D G D of the regular simplex Gram keep every
            # off-diagonal negative and the rank at n - 1 = d + 1.
            s = np.diag(r.uniform_array(n, lo=0.5, hi=1.5))
            g = s @ regular_simplex_gram(n) @ s
            g = 0.5 * (g + g.T)
            w = spectral_witness(g, d, AngleMode.OBTUSE)
            if w.realizable is None:
                indeterminate += 1
            if w.realizable is not False:
                accepted.append(i)
    g4 = np.full((4, 4), -1.0 / 3.0)
    np.fill_diagonal(g4, 1.0)
    w4 = spectral_witness(g4, 2, AngleMode.OBTUSE)
    expected = np.array([0.0, 4 / 3, 4 / 3, 4 / 3])
    spec_err = float(np.max(np.abs(w4.gram_spectrum.eigenvalues - expected)))
    ok4 = w4.realizable is False and spec_err <= SPECTRUM_TOL
    detail = {
        "extremal_dims": max_dim,
        "extremal_failures": extremal_bad,
        "adversarial_attempts": attempts,
        "false_acceptances": accepted,
        "indeterminate": indeterminate,
        "gram4_verdict": w4.verdict,
        "gram4_spectrum_error": spec_err,
    }
    return CriterionResult(5, "rankin-bounds", not extremal_bad and not accepted and ok4, detail)


def criterion_6(seed: int, generated: int = 100, max_dim: int = 16) -> CriterionResult:
    """tr(I - G) = 0 for every non-acute unit set met in the suite."""
    sets = [extremal_config(d, AngleMode.NONACUTE) for d in range(1, max_dim + 1)]
    for i in range(generated):
        r = _rng(seed, 6, i)
        d = r.integers(1, 8)
        n = r.integers(1, 2 * d)
        sets.append(generate(InstanceSpec(d, n, Kind.RANKIN_NONACUTE, derive_seed(seed, 6, i, 1))))
    bad, worst, checked = [], 0.0, 0
    for k, ps in enumerate(sets):
        if not check_angles(ps, AngleMode.NONACUTE).predicate_holds:
            continue
        checked += 1
        unit = ps.points / np.linalg.norm(ps.points, axis=1)[:, None]
        tr = abs(float(np.trace(np.eye(ps.n) - gram(unit))))
        worst = max(worst, tr / ps.n)
        if tr > ps.n * TRACE_TOL:
            bad.append(k)
    detail = {"sets_checked": checked, "failures": bad, "max_trace_over_n": worst}
    return CriterionResult(6, "trace-identity", not bad and checked == len(sets), detail)


def criterion_7(seed: int, count: int = 300) -> CriterionResult:
    """contains_origin and both reduction modes agree with subset enumeration."""
    disagreements, inside_count = [], 0
    for i in range(count):
        r = _rng(seed, 7, i)
        d = r.integers(1, 4)
        n = r.integers(1, 9)
        kind = Kind.ORIGIN_INSIDE if r.random() < 0.5 else Kind.ORIGIN_OUTSIDE
        ps, w = generate_with_witness(InstanceSpec(d, n, kind, derive_seed(seed, 7, i, 1)))
        verdict = contains_origin(ps)
        inside, smallest = exhaustive_membership(ps.points)
        if verdict.inside != inside:
            disagreements.append([i, "membership"])
            continue
        if not inside:
            continue
        inside_count += 1
        witness = w if w is not None else verdict.combination
        for mode in ReductionMode:
            res = reduce_caratheodory(ps, witness, mode)
            sub = ps.points[list(res.support)]
            if len(res.support) > d + 1 or len(res.support) < smallest or not subset_contains_origin(sub):
                disagreements.append([i, mode.value])
    detail = {"instances": count, "inside": inside_count, "disagreements": disagreements}
    return CriterionResult(7, "oracle-equivalence", not disagreements, detail)


def criterion_8(seed: int, count: int = 100) -> CriterionResult:
    """Perron root vs char-poly scan; eigenvalue sums vs traces."""
    perron_bad, worst_p = [], 0.0
    for i in range(count):
        r = _rng(seed, 8, i)
        n = r.integers(1, 12)
        m = r.uniform_array(n, n, lo=0.01, hi=1.0)
        err = abs(perron(m).rho - perron_root_scan(m))
        worst_p = max(worst_p, err)
        if err > PERRON_ORACLE_TOL:
            perron_bad.append(i)
    trace_bad, worst_t = [], 0.0
    for i in range(count):
        r = _rng(seed, 8, 1000 + i)
        n = r.integers(1, 12)
        a = r.normal_array(n, n)
        s = a + a.T
        err = abs(float(np.sum(symmetric_eig(s).eigenvalues)) - float(np.trace(s)))
        worst_t = max(worst_t, err / n)
        if err > n * EIG_TRACE_TOL:
            trace_bad.append(i)
    detail = {
        "perron_matrices": count,
        "perron_failures": perron_bad,
        "max_perron_error": worst_p,
        "symmetric_matrices": count,
        "trace_failures": trace_bad,
        "max_trace_error_over_n": worst_t,
    }
    return CriterionResult(8, "numerics-floor", not perron_bad and not trace_bad, detail)


CRITERIA = (criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7, criterion_8)


def run_criterion(fn, seed: int) -> CriterionResult:
    t0 = time.perf_counter()
    res = fn(seed)
    res.seconds = time.perf_counter() - t0
    return res


def run_all(seed: int = DEFAULT_SEED, only=None) -> list[CriterionResult]:
    chosen = CRITERIA if only is None else [CRITERIA[k - 1] for k in only]
    return [run_criterion(fn, seed) for fn in chosen]


def report(results, seed: int) -> dict:
    return {
        "seed": seed,
        "backend": kernels.backend_name(),
        "criteria": [r.to_json() for r in results],
        "passed": all(r.passed for r in results),
    }
