"""Compare the compiled and pure-Python elimination kernels.

    python benchmarks/bench_kernels.py [--repeat N]

Part 1 times ``int_rref`` directly on random integer matrices of the shapes
that arise in the Aomoto complexes (tall, sparse-ish, small entries).
Part 2 times a full b-function run under each backend in a subprocess,
switching with BSARR_PURE_PYTHON.
"""
import argparse
import os
import random
import subprocess
import sys
import time

from bsarr import _rref_py

try:
    from bsarr import _rref_c
except ImportError:
    _rref_c = None


def random_matrix(rng, rows, cols, density=0.3, bound=5):
    return [[rng.randint(-bound, bound) if rng.random() < density else 0 for _ in range(cols)]
            for _ in range(rows)]


def bench_kernel(fn, mats, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        for m, c in mats:
            fn([list(r) for r in m], c)
        best = min(best, time.perf_counter() - t)
    return best


def bench_end_to_end(example, pure, repeat):
    env = dict(os.environ, BSARR_PURE_PYTHON="1" if pure else "0")
    code = ("import time; from bsarr.corpus import load_corpus; from bsarr.bfunction import assemble_bfunction; "
            f"a = load_corpus({example!r}).arrangement; t = time.perf_counter(); assemble_bfunction(a); "
            "print(time.perf_counter() - t)")
    times = []
    for _ in range(repeat):
        out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
        times.append(float(out.stdout))
    return min(times)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    rng = random.Random(0)
    shapes = [(20, 15), (40, 30), (60, 40), (120, 80)]
    print(f"{'shape':>12} {'python (s)':>12} {'cython (s)':>12} {'speedup':>8}")
    for rows, cols in shapes:
        mats = [(random_matrix(rng, rows, cols), cols) for _ in range(5)]
        tp = bench_kernel(_rref_py.int_rref, mats, args.repeat)
        if _rref_c is None:
            print(f"{f'{rows}x{cols}':>12} {tp:12.4f} {'n/a':>12}")
            continue
        tc = bench_kernel(_rref_c.int_rref, mats, args.repeat)
        print(f"{f'{rows}x{cols}':>12} {tp:12.4f} {tc:12.4f} {tp / tc:8.2f}")
    print()
    print(f"{'b-function':>16} {'python (s)':>12} {'cython (s)':>12} {'speedup':>8}")
    for example in ("quadrangle-d6", "triple6-d7", "nine-lines-d9"):
        tp = bench_end_to_end(example, True, args.repeat)
        tc = bench_end_to_end(example, False, args.repeat)
        print(f"{example:>16} {tp:12.4f} {tc:12.4f} {tp / tc:8.2f}")


if __name__ == "__main__":
    main()
