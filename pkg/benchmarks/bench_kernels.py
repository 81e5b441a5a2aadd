"""Compiled vs pure-Python kernels.

    python3 benchmarks/bench_kernels.py [--repeat N]

Each kernel is timed on both backends with identical inputs and the
outputs are compared; the table lists best-of-N wall times.  The second
table runs whole workloads in subprocesses, once with CURVEDEFECT_PURE=1.
"""

from __future__ import annotations

import argparse
import os
import subprocess
import sys
import timeit

from curvedefect import _pykernels, random_curve, torus_knot
from curvedefect.casson import _weights
from curvedefect.curvemap import gauss_code

try:
    from curvedefect import _ckernels
except ImportError:
    _ckernels = None


def cases():
    t = torus_knot(7, 8)
    r = random_curve(120, 1)
    yield "canonical_code T(7,8) n=48", "canonical_code", (t.alpha, t.n, True)
    yield "canonical_code random n=120", "canonical_code", (r.alpha, r.n, True)
    code = gauss_code(torus_knot(10, 31))
    pos = code.positions()
    order = code.crossings()
    first = [pos[x][0] for x in order]
    second = [pos[x][1] for x in order]
    yield "interleave_matrix n=279", "interleave_matrix", (first, second)
    for shadow, label in ((torus_knot(5, 4), "T(5,4) n=16"), (torus_knot(3, 10), "T(3,10) n=20")):
        _, w = _weights(shadow)
        n = shadow.n
        yield f"casson_sum {label}", "casson_sum", (w.tolist(), [[1] * n] * n)


WORKLOADS = {
    "reduce_graph cylgrid(3,7)": "from curvedefect import *; reduce_graph(cylindrical_grid(3, 7))",
    "reduce_curve T(4,5)": "from curvedefect import *; reduce_curve(torus_knot(4, 5))",
    "expected_c2_exhaustive T(3,7)": "from curvedefect import *; expected_c2_exhaustive(torus_knot(3, 7))",
}


def run_workload(code: str, pure: bool) -> float:
    env = dict(os.environ)
    if pure:
        env["CURVEDEFECT_PURE"] = "1"
    else:
        env.pop("CURVEDEFECT_PURE", None)
    prog = f"import time; t = time.perf_counter(); {code}; print(time.perf_counter() - t)"
    out = subprocess.run([sys.executable, "-c", prog], env=env, capture_output=True, text=True, check=True)
    return float(out.stdout.strip())


def best_time(fn, args, repeat):
    return min(timeit.repeat(lambda: fn(*args), number=1, repeat=repeat))


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    if _ckernels is None:
        print("compiled kernels are not built; reinstall with Cython available", file=sys.stderr)
        return 1
    print(f"{'kernel':34} {'python s':>10} {'cython s':>10} {'speedup':>8}")
    for label, name, inputs in cases():
        py, cy = getattr(_pykernels, name), getattr(_ckernels, name)
        if py(*inputs) != cy(*inputs):
            print(f"{label}: backends disagree", file=sys.stderr)
            return 1
        tp = best_time(py, inputs, args.repeat)
        tc = best_time(cy, inputs, args.repeat)
        print(f"{label:34} {tp:10.4f} {tc:10.4f} {tp / tc:8.1f}x")
    print()
    print(f"{'workload':34} {'python s':>10} {'cython s':>10} {'speedup':>8}")
    for label, code in WORKLOADS.items():
        tp = min(run_workload(code, True) for _ in range(args.repeat))
        tc = min(run_workload(code, False) for _ in range(args.repeat))
        print(f"{label:34} {tp:10.4f} {tc:10.4f} {tp / tc:8.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
