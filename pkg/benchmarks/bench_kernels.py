"""Compare the numba and numpy kernel backends on the three hot loops.

Run as a script:

    python3 benchmarks/bench_kernels.py [--q 9] [--repeat 5]

Each kernel runs on identical inputs under both backends; results must agree
bit for bit, and the table reports the median wall time per call.
"""

import argparse
import statistics
import time

import numpy as np

from agquenta import _kernels
from agquenta.galois import GF


def _median_time(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return statistics.median(times)


def make_cases(q, rng):
    field = GF(q)
    tables = field.tables
    M = rng.integers(0, q, size=(120, 160))
    A = rng.integers(0, q, size=(200, 200))
    B = rng.integers(0, q, size=(200, 200))
    # k chosen so the enumeration stays around a million codewords
    k = 1
    while q ** (k + 1) <= 1 << 20:
        k += 1
    G = _kernels.rref(rng.integers(0, q, size=(k, 40)), tables)[0]
    return tables, {
        "rref 120x160": lambda: _kernels.rref(M, tables),
        "matmul 200x200": lambda: _kernels.matmul(A, B, tables),
        f"weights k={G.shape[0]} n=40": lambda:
            _kernels.weight_histogram(G, q, tables),
    }


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--q", type=int, default=9)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    _, cases = make_cases(args.q, rng)

    results = {}
    for backend in ("numpy", "numba"):
        try:
            _kernels.set_backend(backend)
        except RuntimeError as exc:
            print(f"{backend}: skipped ({exc})")
            continue
        for name, fn in cases.items():
            fn()  # warm up (jit compile on numba)
            results.setdefault(name, {})[backend] = _median_time(fn, args.repeat)
            results[name].setdefault("out", fn())
            got = fn()
            ref = results[name]["out"]
            if isinstance(ref, tuple):
                same = all(np.array_equal(a, b) for a, b in zip(ref, got))
            else:
                same = np.array_equal(ref, got)
            if not same:
                raise SystemExit(f"backend results differ on {name}")

    width = max(len(n) for n in results)
    print(f"{'kernel'.ljust(width)}  {'numpy':>10}  {'numba':>10}  speedup")
    for name, r in results.items():
        np_t, nb_t = r.get("numpy"), r.get("numba")
        ratio = f"{np_t / nb_t:6.1f}x" if np_t and nb_t else "      -"
        fmt = lambda t: f"{t * 1e3:8.2f}ms" if t is not None else "         -"
        print(f"{name.ljust(width)}  {fmt(np_t)}  {fmt(nb_t)}  {ratio}")


if __name__ == "__main__":
    main()
