#!/usr/bin/env python3
"""Compiled vs pure-Python truncated product, plus the end-to-end S_f build.

    python benchmarks/bench_kernels.py [--max-d 6] [--repeat 5]

Every compiled result is compared against the Python kernel before timing.
"""
from __future__ import annotations

import argparse
import random
import subprocess
import sys
import time
from math import factorial

from cobindex import kernels


def _best(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def bench_kernel(d, repeat, rng):
    table = kernels.product_table(d, d, divided_powers=True)
    # coefficient sizes like the ones S_f construction produces: |coef| <= d! * small
    a = [rng.randint(-factorial(d) * 8, factorial(d) * 8) for _ in range(table.size)]
    b = [rng.randint(-factorial(d) * 8, factorial(d) * 8) for _ in range(table.size)]
    ref = kernels.trunc_mul_python(a, b, table)
    got = kernels.trunc_mul_compiled(a, b, table)
    if got != ref:
        raise SystemExit(f"kernel mismatch at d = {d}")
    n = 50
    tp = _best(lambda: [kernels.trunc_mul_python(a, b, table) for _ in range(n)], repeat) / n
    tc = _best(lambda: [kernels.trunc_mul_compiled(a, b, table) for _ in range(n)], repeat) / n
    return table.size, len(table.I), tp, tc


def bench_sf(d, backend_env):
    code = (
        "import time; from cobindex.cobordism import lattice_Iprime; "
        f"t = time.perf_counter(); lattice_Iprime({d}, 2); print(time.perf_counter() - t)"
    )
    env = dict(__import__("os").environ)
    env.pop("COBINDEX_PURE_PYTHON", None)
    env.update(backend_env)
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    return float(out.stdout)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-d", type=int, default=6)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    if kernels.BACKEND != "compiled":
        raise SystemExit("compiled kernels not built; run `pip install -e . --no-build-isolation` first")
    rng = random.Random(0)
    print(f"{'d':>2} {'basis':>6} {'entries':>8} {'python us':>10} {'cython us':>10} {'speedup':>8}")
    for d in range(2, args.max_d + 1):
        size, entries, tp, tc = bench_kernel(d, args.repeat, rng)
        print(f"{d:>2} {size:>6} {entries:>8} {tp * 1e6:>10.1f} {tc * 1e6:>10.1f} {tp / tc:>8.1f}x")
    d = min(args.max_d, 5)
    tc = bench_sf(d, {})
    tp = bench_sf(d, {"COBINDEX_PURE_PYTHON": "1"})
    print(f"\nI'_{d}(B=2) from scratch: python {tp:.2f} s, compiled {tc:.2f} s ({tp / tc:.1f}x)")


if __name__ == "__main__":
    main()
