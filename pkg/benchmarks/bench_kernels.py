"""Compiled vs pure-Python kernels.

    python3 benchmarks/bench_kernels.py [--repeat N]

Times the Jacobi eigensolver, the shifted power iteration and the dense
simplex on fixed seeded inputs under each available backend, then the same
for a whole pipeline call (leave-one-out strict certificate).
"""

import argparse
import timeit

from convexcert import kernels
from convexcert.certificates import certify_nonmembership, leave_one_out_separators
from convexcert.generate import InstanceSpec, Kind, generate
from convexcert.geometry import PointSet, contains_origin
from convexcert.numerics import perron, symmetric_eig
from convexcert.rng import Xoshiro256


def cases():
    g = Xoshiro256(2024)
    a = g.normal_array(24, 24)
    sym = a + a.T
    pos = g.uniform_array(24, 24, lo=0.01, hi=1.0)
    member = PointSet(6, g.normal_array(40, 6) + 0.4)
    outside = generate(InstanceSpec(4, 12, Kind.ORIGIN_OUTSIDE, 3))
    return {
        "jacobi 24x24": lambda: symmetric_eig(sym),
        "perron 24x24": lambda: perron(pos),
        "membership LP n=40 d=6": lambda: contains_origin(member),
        "strict certificate n=12 d=4": lambda: certify_nonmembership(
            outside, leave_one_out_separators(outside, "strict")
        ),
    }


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    backends = sorted(kernels.BACKENDS)
    print(f"{'case':32s}" + "".join(f"{b:>14s}" for b in backends) + ("      speedup" if len(backends) > 1 else ""))
    for name, fn in cases().items():
        times = {}
        for b in backends:
            with kernels.use(b):
                fn()
                number = 3
                times[b] = min(timeit.repeat(fn, number=number, repeat=args.repeat)) / number
        row = f"{name:32s}" + "".join(f"{times[b] * 1e3:12.3f}ms" for b in backends)
        if len(backends) > 1:
            row += f"{times['python'] / times['compiled']:12.1f}x"
        print(row)


if __name__ == "__main__":
    main()
