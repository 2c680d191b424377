"""``convexcert`` command line.

JSON results go to stdout (or ``--out``), diagnostics to stderr.  Exit codes:
0 verified success, 1 verified negative verdict, 2 input error, 3 numerical
or ambiguity failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import acceptance
from .certificates import (
    LeaveOneOutSeparators,
    certify_noninterior,
    certify_nonmembership,
    leave_one_out_separators,
)
from .errors import ConvexCertError, GenerationFailed, InputError, NumericalError
from .generate import InstanceSpec, generate_with_witness, parse_kind
from .geometry import (
    MEMBERSHIP_TOL,
    ConvexCombination,
    PointSet,
    SeparationMode,
    contains_origin,
    is_interior,
    weak_separator,
)
from .numerics import gram, matrix_from_json
from .rankin import ANGLE_TOL, AngleMode, check_angles, spectral_witness
from .reduction import ReductionMode, reduce_caratheodory, reduce_steinitz

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT, EXIT_NUMERICAL = 0, 1, 2, 3

COMMANDS = (
    "member",
    "interior",
    "separate",
    "reduce-caratheodory",
    "reduce-steinitz",
    "certify-caratheodory",
    "certify-steinitz",
    "rankin-check",
    "rankin-witness",
    "gen",
    "selftest",
)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_INPUT)


def _clean(obj):
    """JSON-safe copy: numpy scalars to Python, non-finite floats to None."""
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _clean(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        f = float(obj)
        return f if math.isfinite(f) else None
    return obj


def dumps(obj) -> str:
    # repr-based float output round-trips every double exactly.
    return json.dumps(_clean(obj), indent=2, allow_nan=False) + "\n"


def _load_json(path):
    try:
        if path in (None, "-"):
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON in {path or 'stdin'}: {exc}") from None


def _points(args):
    obj = _load_json(args.inp)
    if not isinstance(obj, dict):
        raise InputError("expected a JSON object with 'dim' and 'points'")
    return PointSet.from_json(obj), obj


def _tol(args, default):
    return default if args.tol is None else args.tol


def cmd_member(args):
    ps, _ = _points(args)
    v = contains_origin(ps, _tol(args, MEMBERSHIP_TOL))
    return (EXIT_OK if v.inside else EXIT_NEGATIVE), v.to_json()


def cmd_interior(args):
    ps, _ = _points(args)
    v = is_interior(ps, _tol(args, MEMBERSHIP_TOL))
    return (EXIT_OK if v.interior else EXIT_NEGATIVE), v.to_json()


def cmd_separate(args):
    ps, _ = _points(args)
    mode = args.mode or "strict"
    if mode not in ("strict", "weak"):
        raise InputError("separate: --mode must be strict or weak")
    tol = _tol(args, MEMBERSHIP_TOL)
    if mode == "strict":
        v = contains_origin(ps, tol)
        if v.inside:
            return EXIT_NEGATIVE, {"verdict": "inside", "separator": None, **v.combination.to_json()}
        return EXIT_OK, {"verdict": "outside", "separator": v.separator.to_json()}
    sep = weak_separator(ps, tol)
    if sep is None:
        return EXIT_NEGATIVE, {"verdict": "interior", "separator": None}
    return EXIT_OK, {"verdict": "not-interior", "separator": sep.to_json()}


def _reduction_mode(args):
    return ReductionMode.FAITHFUL if args.faithful else ReductionMode.FAST


def cmd_reduce_caratheodory(args):
    ps, obj = _points(args)
    if "weights" in obj:
        w = obj["weights"]
        support = obj.get("support", list(range(len(w)) if isinstance(w, list) else []))
        try:
            witness = ConvexCombination(tuple(support), np.array(w, dtype=float))
        except (TypeError, ValueError) as exc:
            raise InputError(f"bad witness: {exc}") from None
    else:
        v = contains_origin(ps, _tol(args, MEMBERSHIP_TOL))
        if not v.inside:
            return EXIT_NEGATIVE, v.to_json()
        witness = v.combination
    return EXIT_OK, reduce_caratheodory(ps, witness, _reduction_mode(args)).to_json()


def cmd_reduce_steinitz(args):
    ps, _ = _points(args)
    res = reduce_steinitz(ps)
    out = res.to_json()
    out["depth"] = res.extra.get("depth")
    return EXIT_OK, out


def _given_separators(obj, ps, mode):
    ys = obj.get("separators")
    if ys is None:
        return None
    try:
        arr = np.array(ys, dtype=float)
    except (TypeError, ValueError) as exc:
        raise InputError(f"bad separators: {exc}") from None
    return LeaveOneOutSeparators(arr.reshape(ps.n, ps.dim) if arr.size == ps.n * ps.dim else arr, mode)


def cmd_certify_caratheodory(args):
    ps, obj = _points(args)
    seps = _given_separators(obj, ps, SeparationMode.STRICT)
    if seps is None:
        v = contains_origin(ps, _tol(args, MEMBERSHIP_TOL))
        if v.inside:
            return EXIT_NEGATIVE, v.to_json()
        seps = leave_one_out_separators(ps, SeparationMode.STRICT)
    return EXIT_OK, certify_nonmembership(ps, seps).to_json()


def cmd_certify_steinitz(args):
    ps, obj = _points(args)
    tol = _tol(args, MEMBERSHIP_TOL)
    seps = _given_separators(obj, ps, SeparationMode.WEAK)
    if seps is None:
        v = is_interior(ps, tol)
        if v.interior:
            return EXIT_NEGATIVE, v.to_json()
        seps = leave_one_out_separators(ps, SeparationMode.WEAK)
    return EXIT_OK, certify_noninterior(ps, seps, tol=tol).to_json()


def _angle_mode(args):
    try:
        return AngleMode(args.mode or "obtuse")
    except ValueError:
        raise InputError("--mode must be obtuse or nonacute") from None


def cmd_rankin_check(args):
    ps, _ = _points(args)
    rep = check_angles(ps, _angle_mode(args), _tol(args, ANGLE_TOL))
    ok = rep.predicate_holds and rep.within_bound
    return (EXIT_OK if ok else EXIT_NEGATIVE), rep.to_json()


def cmd_rankin_witness(args):
    obj = _load_json(args.inp)
    if not isinstance(obj, dict):
        raise InputError("expected a JSON object")
    if "gram" in obj:
        g = obj["gram"]
        g = matrix_from_json(g) if isinstance(g, dict) else np.array(g, dtype=float)
        d = args.dim if args.dim is not None else obj.get("dim")
        if d is None:
            raise InputError("rankin-witness on a Gram matrix needs --dim or a 'dim' field")
    else:
        ps = PointSet.from_json(obj)
        g, d = gram(ps.points), args.dim if args.dim is not None else ps.dim
    mode = None if args.mode is None else _angle_mode(args)
    rep = spectral_witness(g, int(d), mode, _tol(args, ANGLE_TOL))
    code = {True: EXIT_OK, False: EXIT_NEGATIVE, None: EXIT_NUMERICAL}[rep.realizable]
    return code, rep.to_json()


def cmd_gen(args):
    missing = [f for f in ("dim", "n", "kind") if getattr(args, f) is None]
    if missing:
        raise InputError("gen needs " + ", ".join("--" + m for m in missing))
    try:
        kind = parse_kind(args.kind)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    seed = 0 if args.seed is None else args.seed
    ps, w = generate_with_witness(InstanceSpec(args.dim, args.n, kind, seed))
    out = ps.to_json()
    out.update(kind=kind.value, seed=seed)
    if w is not None:
        out["weights"] = [float(x) for x in w.weights]
    return EXIT_OK, out


def cmd_selftest(args):
    seed = acceptance.DEFAULT_SEED if args.seed is None else args.seed
    only = None
    if args.only:
        try:
            only = [int(k) for k in args.only.split(",")]
        except ValueError:
            raise InputError("--only takes comma-separated criterion numbers") from None
        if any(k < 1 or k > len(acceptance.CRITERIA) for k in only):
            raise InputError(f"criteria are numbered 1..{len(acceptance.CRITERIA)}")
    results = acceptance.run_all(seed, only)
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(f"criterion {r.number} {r.name}: {status} ({r.seconds:.2f}s)", file=sys.stderr)
    rep = acceptance.report(results, seed)
    return (EXIT_OK if rep["passed"] else EXIT_NEGATIVE), rep


HANDLERS = {
    "member": cmd_member,
    "interior": cmd_interior,
    "separate": cmd_separate,
    "reduce-caratheodory": cmd_reduce_caratheodory,
    "reduce-steinitz": cmd_reduce_steinitz,
    "certify-caratheodory": cmd_certify_caratheodory,
    "certify-steinitz": cmd_certify_steinitz,
    "rankin-check": cmd_rankin_check,
    "rankin-witness": cmd_rankin_witness,
    "gen": cmd_gen,
    "selftest": cmd_selftest,
}


_HELP = {
    "member": "is the origin in conv(points)? weights or a strict separator",
    "interior": "is the origin interior to conv(points)? weights or a weak separator",
    "separate": "strict (default) or weak separating vector",
    "reduce-caratheodory": "shrink a convex combination of the origin to <= d+1 points",
    "reduce-steinitz": "keep <= 2d points with the origin still interior",
    "certify-caratheodory": "Perron-built strict separator from leave-one-out separators",
    "certify-steinitz": "Perron-built weak separator from leave-one-out separators",
    "rankin-check": "check pairwise obtuse / non-acute angles against the d+1 / 2d bounds",
    "rankin-witness": "Gram-matrix realizability and spectral obstruction",
    "gen": "seeded verified instance",
    "selftest": "run the acceptance suite",
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--in", dest="inp", metavar="FILE", help="input JSON (default: stdin)")
    common.add_argument("--out", metavar="FILE", help="write the JSON result here instead of stdout")
    common.add_argument("--config", metavar="FILE", help="JSON file of option defaults")
    common.add_argument("--seed", type=int)
    common.add_argument("--dim", type=int)
    common.add_argument("--n", type=int)
    common.add_argument("--kind")
    common.add_argument("--mode", help="obtuse|nonacute (rankin), strict|weak (separate)")
    common.add_argument("--tol", type=float)
    red = common.add_mutually_exclusive_group()
    red.add_argument("--faithful", dest="faithful", action="store_true", default=None)
    red.add_argument("--fast", dest="faithful", action="store_false")
    common.add_argument("--only", help="selftest: comma-separated criterion numbers")

    parser = _Parser(prog="convexcert", description="Convex-hull certificates and Rankin bounds.")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True
    for name in COMMANDS:
        sub.add_parser(name, parents=[common], help=_HELP[name])
    return parser


_CONFIG_KEYS = ("seed", "dim", "n", "kind", "mode", "tol", "faithful", "only")


def _apply_config(args):
    if not args.config:
        return
    cfg = _load_json(args.config)
    if not isinstance(cfg, dict):
        raise InputError("config file must hold a JSON object")
    unknown = set(cfg) - set(_CONFIG_KEYS)
    if unknown:
        raise InputError(f"unknown config keys: {', '.join(sorted(unknown))}")
    for key, value in cfg.items():
        if getattr(args, key) is None:
            setattr(args, key, value)


def _emit(payload, out_path):
    text = dumps(payload)
    if out_path:
        try:
            with open(out_path, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"convexcert: cannot write {out_path}: {exc.strerror or exc}", file=sys.stderr)
            return False
    else:
        sys.stdout.write(text)
    return True


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        _apply_config(args)
        if args.faithful is None:
            args.faithful = False
        code, payload = HANDLERS[args.command](args)
    except GenerationFailed as exc:
        code = EXIT_INPUT if exc.impossible else EXIT_NUMERICAL
        payload = {"error": type(exc).__name__, "message": str(exc)}
    except NumericalError as exc:
        code, payload = EXIT_NUMERICAL, {"error": type(exc).__name__, "message": str(exc)}
    except (InputError, ConvexCertError, ValueError) as exc:
        code, payload = EXIT_INPUT, {"error": type(exc).__name__, "message": str(exc)}
    if "error" in payload:
        print(f"convexcert {args.command}: {payload['error']}: {payload['message']}", file=sys.stderr)
    if not _emit(payload, args.out):
        return EXIT_INPUT
    return code


if __name__ == "__main__":
    sys.exit(main())
