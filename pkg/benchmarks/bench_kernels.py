"""Compare the compiled and pure-Python term kernels.

    python3 benchmarks/bench_kernels.py [--repeat N] [--pipeline]

Kernel timings call both implementations directly on the same inputs.
``--pipeline`` additionally times a degree-2 solve in a subprocess per
backend (selected through COXEMBED_PURE_PYTHON).
"""

import argparse
import os
import random
import subprocess
import sys
import timeit

from coxembed.algebra import _pykernels

try:
    from coxembed.algebra import _ckernels
except ImportError:  # extension not built
    _ckernels = None


def random_terms(rng, n, nvars=8, bits=16, coeff=10**12):
    out = {}
    while len(out) < n:
        key = 0
        for i in range(nvars):
            key |= rng.randint(0, 3) << (bits * i)
        c = rng.randint(-coeff, coeff)
        if c:
            out[key] = c
    return out


def kernel_table(repeat):
    rng = random.Random(0)
    a, b = random_terms(rng, 120), random_terms(rng, 120)
    cases = {
        "mul_terms 120x120": lambda m: m.mul_terms(a, b),
        "lincomb_terms 120+120": lambda m: m.lincomb_terms(a, 7, b, -3),
        "scale_terms 120": lambda m: m.scale_terms(a, 12345),
        "content_gcd 120": lambda m: m.content_gcd(a, 0),
    }
    rows = []
    for name, fn in cases.items():
        py = min(timeit.repeat(lambda: fn(_pykernels), number=20, repeat=repeat)) / 20
        cy = min(timeit.repeat(lambda: fn(_ckernels), number=20, repeat=repeat)) / 20 if _ckernels else float("nan")
        rows.append((name, py, cy))
    return rows


PIPELINE = """
import random, time
from coxembed.algebra import BACKEND
from coxembed.coxring import random_config
from coxembed.rescaling import rescaling_symbols, solve_configuration
t0 = time.perf_counter()
cfg = random_config(7, random.Random(1), extra=rescaling_symbols(7))
solve_configuration(cfg)
print(BACKEND, time.perf_counter() - t0)
"""


def pipeline_times():
    out = {}
    for pure in ("1", "0"):
        env = dict(os.environ, COXEMBED_PURE_PYTHON=pure)
        res = subprocess.run([sys.executable, "-c", PIPELINE], env=env, capture_output=True, text=True, check=True)
        backend, seconds = res.stdout.split()
        out[backend] = float(seconds)
    return out


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--pipeline", action="store_true")
    args = parser.parse_args()
    print(f"{'kernel':<24}{'python (us)':>14}{'cython (us)':>14}{'speedup':>10}")
    for name, py, cy in kernel_table(args.repeat):
        print(f"{name:<24}{py * 1e6:>14.1f}{cy * 1e6:>14.1f}{py / cy:>9.2f}x")
    if args.pipeline:
        times = pipeline_times()
        for backend, seconds in times.items():
            print(f"degree-2 solve, {backend:<7} backend: {seconds:.2f} s")


if __name__ == "__main__":
    main()
