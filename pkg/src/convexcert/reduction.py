"""Caratheodory (support <= d+1) and Steinitz (support <= 2d) reductions.

Both faithful loops follow the leave-one-out structure of the induction: while
the support is above the bound, find an index whose removal keeps the origin
in the hull (resp. in the interior) and drop it.  The fast Caratheodory path
instead pivots along affine dependences.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    NotInteriorInput,
    NumericalError,
    ReductionFailed,
    WitnessInvalid,
)
from .geometry import ConvexCombination, PointSet, contains_origin, is_interior

WITNESS_TOL = 1e-7


class ReductionMode(enum.Enum):
    FAST = "fast"
    FAITHFUL = "faithful"


@dataclass(frozen=True)
class ReductionResult:
    support: tuple[int, ...]
    witness: ConvexCombination  # indexed into the original point set
    trace: tuple[int, ...] = ()
    bound: int = 0
    kind: str = "caratheodory"
    mode: ReductionMode = ReductionMode.FAST
    extra: dict = field(default_factory=dict, compare=False)

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "mode": self.mode.value,
            "support": list(self.support),
            "weights": [float(w) for w in self.witness.weights],
            "trace": list(self.trace),
            "bound": self.bound,
        }


def _candidate_order(ps: PointSet, support: list[int]) -> list[int]:
    """Ascending indices, except later copies of a duplicated point go first."""
    dupes = []
    seen = {}
    for i in support:
        key = ps.points[i].tobytes()
        if key in seen:
            dupes.append(i)
        else:
            seen[key] = i
    rest = [i for i in support if i not in set(dupes)]
    return sorted(dupes, reverse=True) + rest


def _residual_tol(ps: PointSet) -> float:
    return WITNESS_TOL * max(1.0, ps.scale())


def _refit(ps: PointSet, support: list[int], lam: np.ndarray) -> np.ndarray:
    """Re-solve the barycentric system on ``support``; keep it if it is better."""
    q = ps.points[support]
    a = np.vstack([q.T, np.ones((1, len(support)))])
    b = np.zeros(ps.dim + 1)
    b[-1] = 1.0
    sol, *_ = np.linalg.lstsq(a, b, rcond=None)
    if np.all(sol > 0):
        sol = sol / sol.sum()
        if np.linalg.norm(sol @ q) <= np.linalg.norm(lam @ q):
            return sol
    return lam


def _fast_caratheodory(ps, support, lam, bound):
    support = list(support)
    lam = np.array(lam, dtype=float)
    trace = []
    while len(support) > bound:
        q = ps.points[support]
        a = np.vstack([q.T, np.ones((1, len(support)))])
        # Null vector: right singular vector of the smallest singular value.
        _, _, vt = np.linalg.svd(a)
        alpha = vt[-1]
        if not np.any(alpha > 1e-14):
            alpha = -alpha
        pos = alpha > 1e-14
        ratios = np.full(len(support), np.inf)
        ratios[pos] = lam[pos] / alpha[pos]
        t = float(ratios.min())
        ties = np.flatnonzero(ratios <= t * (1.0 + 1e-12) + 1e-300)
        k = int(min(ties, key=lambda i: (lam[i], support[i])))
        lam = lam - t * alpha
        lam[k] = 0.0
        # Zero out anything else the step annihilated.
        gone = [i for i in range(len(support)) if lam[i] <= 1e-15]
        for i in sorted(gone, key=lambda i: (i != k, support[i])):
            trace.append(support[i])
        keep = [i for i in range(len(support)) if i not in set(gone)]
        support = [support[i] for i in keep]
        lam = lam[keep]
        lam = lam / lam.sum()
    return support, lam, trace


def _faithful_caratheodory(ps, support, lam, bound):
    support = list(support)
    trace = []
    while len(support) > bound:
        for j in _candidate_order(ps, support):
            rest = [i for i in support if i != j]
            try:
                verdict = contains_origin(ps.subset(rest))
            except NumericalError:
                continue
            if verdict.inside:
                comb = verdict.combination
                new_lam = np.zeros(len(rest))
                for idx, w in zip(comb.support, comb.weights):
                    new_lam[idx] = w
                support, lam = rest, new_lam
                trace.append(j)
                break
        else:
            raise ReductionFailed(
                f"no removable index among {len(support)} > {bound} points; "
                "the hull may contain the origin only within tolerance"
            )
    # Drop zero-weight entries left by the subset witness.
    keep = [i for i in range(len(support)) if lam[i] > 0]
    return [support[i] for i in keep], np.asarray(lam)[keep], trace


def reduce_caratheodory(
    ps: PointSet,
    witness: ConvexCombination,
    mode: ReductionMode | str = ReductionMode.FAST,
) -> ReductionResult:
    """Shrink a convex combination of the origin to at most d+1 points."""
    mode = ReductionMode(mode)
    tol = _residual_tol(ps)
    w = np.asarray(witness.weights, dtype=float)
    if (
        len(witness.support) == 0
        or np.any(w < 0)
        or abs(w.sum() - 1.0) > 1e-9
        or any(i < 0 or i >= ps.n for i in witness.support)
        or len(set(witness.support)) != len(witness.support)
        or witness.residual(ps) > tol
    ):
        raise WitnessInvalid("input combination does not verify o in conv(ps)")
    pairs = sorted((i, x) for i, x in zip(witness.support, w) if x > 0)
    support = [i for i, _ in pairs]
    lam = np.array([x for _, x in pairs])
    lam = lam / lam.sum()
    bound = ps.dim + 1
    if mode is ReductionMode.FAST:
        support, lam, trace = _fast_caratheodory(ps, support, lam, bound)
    else:
        support, lam, trace = _faithful_caratheodory(ps, support, lam, bound)
    lam = _refit(ps, support, lam)
    order = np.argsort(support)
    comb = ConvexCombination(tuple(support[i] for i in order), lam[order])
    if len(comb.support) > bound or not comb.verify(ps, tol):
        raise ReductionFailed(
            f"reduced witness failed verification (|J|={len(comb.support)}, "
            f"residual={comb.residual(ps):.3g})"
        )
    return ReductionResult(comb.support, comb, tuple(trace), bound, "caratheodory", mode)


def reduce_steinitz(ps: PointSet) -> ReductionResult:
    """Keep at most 2d points with the origin still interior to their hull."""
    verdict = is_interior(ps)
    if not verdict.interior:
        raise NotInteriorInput("the origin is not an interior point of conv(ps)")
    bound = 2 * ps.dim
    support = list(range(ps.n))
    trace = []
    while len(support) > bound:
        for j in _candidate_order(ps, support):
            rest = [i for i in support if i != j]
            try:
                sub = is_interior(ps.subset(rest))
            except NumericalError:
                continue
            if sub.interior:
                support, verdict = rest, sub
                trace.append(j)
                break
        else:
            raise ReductionFailed(f"no removable index among {len(support)} > {bound} points")
    comb = ConvexCombination(
        tuple(support[i] for i in verdict.combination.support), verdict.combination.weights
    )
    if not comb.verify(ps, _residual_tol(ps)):
        raise ReductionFailed("Steinitz witness failed verification")
    return ReductionResult(
        tuple(support), comb, tuple(trace), bound, "steinitz", ReductionMode.FAITHFUL,
        extra={"depth": verdict.depth},
    )
