"""Compiled (Cython + GMP) vs pure-Python kernels.

    python3 benchmarks/bench_kernels.py [--sizes 200 400 800] [--repeat 3]

Times each integer kernel on inputs shaped like the ones the pipeline
produces, checks that both backends agree, and finishes with an end-to-end
derivation of the largest level under each backend (separate processes,
since the backend is chosen at import).
"""

import argparse
import os
import subprocess
import sys
import timeit

from bielliptic import _kernels
from bielliptic.arith import divisor_sums
from bielliptic.ecurve import WeierstrassCurve, newform

E34 = WeierstrassCurve.from_ainvs([1, 0, 0, -3, 1], label="34A1")

END_TO_END = """
import time
from bielliptic import BACKEND
from bielliptic.fixtures import load_fixtures
from bielliptic.pipeline import derive
d = load_fixtures()[{level}]
t0 = time.perf_counter()
r = derive(d)
print(BACKEND, r.passed, round(time.perf_counter() - t0, 3))
"""


def inputs(n):
    sig = divisor_sums(n)
    # eta(z)^-2 eta(2z)^4 eta(17z)^2 eta(34z)^-4: the logarithmic derivative
    s = [0] * n
    for d, r in ((1, -2), (2, 4), (17, 2), (34, -4)):
        for m in range(1, (n - 1) // d + 1):
            s[d * m] -= r * d * sig[m]
    g = _kernels.python_backend.exp_logderiv(s, n)
    # (h/q)^2 for the newform of 34A1, as fed to the x recursion
    H = list(newform(E34, n + 2).numerators)[:n]
    h2 = _kernels.python_backend.mul_trunc(H, H, n)
    return s, g, h2


def bench(name, fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", type=int, nargs="+", default=[200, 400, 800])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--level", type=int, default=131)
    args = ap.parse_args()

    py, cy = _kernels.python_backend, _kernels.compiled_backend
    if cy is None:
        sys.exit("compiled backend not built; run pip install -e . --no-build-isolation")

    print(f"{'kernel':<14}{'n':>6}{'python s':>12}{'compiled s':>12}{'speedup':>9}")
    for n in args.sizes:
        s, g, h2 = inputs(n)
        cases = {
            "mul_trunc": lambda k: k.mul_trunc(g, g, n),
            "inv_unit": lambda k: k.inv_unit(g, n),
            "exp_logderiv": lambda k: k.exp_logderiv(s, n),
            "weierstrass_x": lambda k: k.weierstrass_x(h2, E34.b2, E34.b4, E34.b6, n),
        }
        for name, call in cases.items():
            ref = call(py)
            if ref is None or ref != call(cy):
                sys.exit(f"{name}: backends disagree at n={n}")
            tp = bench(name, lambda: call(py), args.repeat)
            tc = bench(name, lambda: call(cy), args.repeat)
            print(f"{name:<14}{n:>6}{tp:>12.4f}{tc:>12.4f}{tp / tc:>8.1f}x")

    print(f"\nend to end, level {args.level}:")
    for pure in ("", "1"):
        env = dict(os.environ, BIELLIPTIC_PURE_PYTHON=pure)
        out = subprocess.run([sys.executable, "-c", END_TO_END.format(level=args.level)],
                             env=env, capture_output=True, text=True, check=True)
        backend, passed, secs = out.stdout.split()
        print(f"  {backend:<9} passed={passed}  {secs}s")


if __name__ == "__main__":
    main()
